#include "cdsxva/harness.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace cdsxva {

PriceResult run_price(const RunConfig& cfg) {
  const Engine engine(cfg.engine);
  const std::vector<PathSample> batch = engine.run_batch();
  return {engine.spread_report(batch), engine.exposure_report(batch)};
}

std::vector<CaseResult> run_case_table(const RunConfig& cfg) {
  std::vector<CaseResult> results;
  results.reserve(cfg.cases.size());
  for (const CaseRow& row : cfg.cases) {
    EngineConfig ec = cfg.engine;
    ec.margin.gamma_cpty = row.gamma_cpty;
    ec.margin.gamma_inv = row.gamma_inv;
    const Engine engine(ec);
    const std::vector<PathSample> batch = engine.run_batch();
    const SpreadReport spread = engine.spread_report(batch);
    CaseResult out;
    out.row = row;
    out.exposure = engine.exposure_report(batch);
    out.sva0 = spread.sva0_via_cva;
    out.rdv01_c = spread.rdv01_c;
    results.push_back(std::move(out));
  }
  return results;
}

ProfilesResult run_profiles(const RunConfig& cfg, bool with_forward) {
  const Engine engine(cfg.engine);
  ProfilesResult out;
  out.buckets = engine.profile_curves();
  if (with_forward) out.forward = engine.forward_cva();
  return out;
}

std::string format_sig(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

std::string format_threshold(double value) {
  if (std::isinf(value)) return "unbounded";
  return format_sig(value);
}

namespace {

void put(std::ostringstream& os, const char* key, const std::string& value,
         bool quote = false) {
  os << "  \"" << key << "\": ";
  if (quote) os << '"' << value << '"';
  else os << value;
}

void put_number(std::ostringstream& os, const char* key, double value,
                bool last = false) {
  put(os, key, format_sig(value));
  os << (last ? "\n" : ",\n");
}

}  // namespace

std::string price_report_json(const PriceResult& result) {
  const SpreadReport& s = result.spread;
  const ExposureReport& e = result.exposure;
  constexpr double bps = 1e4;
  std::ostringstream os;
  os << "{\n";
  put(os, "report", "price", true);
  os << ",\n";
  os << "  \"seed\": " << s.seed << ",\n";
  os << "  \"paths\": " << s.n_paths << ",\n";
  os << "  \"units\": {\"value_adjustments\": \"per unit notional\", "
        "\"spreads\": \"bps per year\", \"rdv01\": \"years\"},\n";
  put_number(os, "kappa0_bps", s.kappa0 * bps);
  put_number(os, "kappa0_c_bps", s.kappa0_c.value * bps);
  put_number(os, "kappa0_c_bps_se", s.kappa0_c.se * bps);
  put_number(os, "sva0_bps", s.sva0.value * bps);
  put_number(os, "sva0_bps_se", s.sva0.se * bps);
  put_number(os, "sva0_bps_via_cva", s.sva0_via_cva.value * bps);
  put_number(os, "sva0_bps_via_cva_se", s.sva0_via_cva.se * bps);
  put_number(os, "rdv01_c_years", s.rdv01_c.value);
  put_number(os, "rdv01_c_years_se", s.rdv01_c.se);
  put_number(os, "pl_c", s.pl_c.value);
  put_number(os, "pl_c_se", s.pl_c.se);
  put_number(os, "cva0", e.cva0.value);
  put_number(os, "cva0_se", e.cva0.se);
  put_number(os, "ucva0", e.ucva0.value);
  put_number(os, "ucva0_se", e.ucva0.se);
  put_number(os, "dva0", e.dva0.value);
  put_number(os, "dva0_se", e.dva0.se);
  put_number(os, "clean_price_mc", s.clean_price_mc.value);
  put_number(os, "clean_price_mc_se", s.clean_price_mc.se, /*last=*/true);
  os << "}\n";
  return os.str();
}

std::string case_table_csv(const std::vector<CaseResult>& rows) {
  constexpr double bps = 1e4;
  std::ostringstream os;
  os << "case,gamma_cpty,gamma_inv,cva0,cva0_se,ucva0,ucva0_se,"
        "dva0,dva0_se,sva0_bps,sva0_bps_se\n";
  for (const CaseResult& r : rows) {
    os << r.row.label << ',' << format_threshold(r.row.gamma_cpty) << ','
       << format_threshold(r.row.gamma_inv) << ','
       << format_sig(r.exposure.cva0.value) << ','
       << format_sig(r.exposure.cva0.se) << ','
       << format_sig(r.exposure.ucva0.value) << ','
       << format_sig(r.exposure.ucva0.se) << ','
       << format_sig(r.exposure.dva0.value) << ','
       << format_sig(r.exposure.dva0.se) << ','
       << format_sig(r.sva0.value * bps) << ','
       << format_sig(r.sva0.se * bps) << '\n';
  }
  return os.str();
}

std::string profiles_csv(const std::vector<ProfileBucket>& buckets) {
  std::ostringstream os;
  os << "time,epe,epe_se,n_cpty,ene,ene_se,n_inv,"
        "mean_collateral,mean_collateral_se,n_alive\n";
  for (const ProfileBucket& b : buckets) {
    os << format_sig(b.time) << ',';
    if (b.n_cpty > 0) {
      os << format_sig(b.epe.value) << ',' << format_sig(b.epe.se);
    } else {
      os << ',';  // absent, not zero
    }
    os << ',' << b.n_cpty << ',';
    if (b.n_inv > 0) {
      os << format_sig(b.ene.value) << ',' << format_sig(b.ene.se);
    } else {
      os << ',';
    }
    os << ',' << b.n_inv << ',';
    if (b.n_alive > 0) {
      os << format_sig(b.collateral.value) << ',' << format_sig(b.collateral.se);
    } else {
      os << ',';
    }
    os << ',' << b.n_alive << '\n';
  }
  return os.str();
}

std::string forward_cva_csv(const std::vector<ForwardCvaPoint>& curve) {
  std::ostringstream os;
  os << "time,mean_cva,se\n";
  for (const ForwardCvaPoint& p : curve) {
    os << format_sig(p.time) << ',' << format_sig(p.cva.value) << ','
       << format_sig(p.cva.se) << '\n';
  }
  return os.str();
}

}  // namespace cdsxva
