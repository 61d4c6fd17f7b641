#include "fkg/json_io.hpp"

namespace fkg::io {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw Error(path + ": " + message);
}

const Json& member(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(path, std::string("missing field \"") + key + "\"");
  return *it;
}

long long integer_from_json(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<long long>();
}

Json bools(const std::vector<bool>& v) {
  Json out = Json::array();
  for (bool b : v) out.push_back(b);
  return out;
}

Json rationals(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

}  // namespace

Json to_json(const Rational& value) { return to_string(value); }

Rational rational_from_json(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "rationals must be strings of the form \"p/q\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

SubsetId subset_from_json(const Json& j, GroundSet ground, const std::string& path) {
  const long long bits = integer_from_json(j, path);
  if (bits < 0 || static_cast<unsigned long long>(bits) >= ground.table_size()) {
    fail(path, "subset index " + std::to_string(bits) + " outside [0, 2^" +
                   std::to_string(ground.size()) + ")");
  }
  return SubsetId{static_cast<std::uint32_t>(bits)};
}

Json to_json(const MonotoneComb& f) {
  Json out = Json::array();
  for (const auto& t : f.terms()) out.push_back({{"coef", to_json(t.coef)}, {"gen", t.gen.bits}});
  return out;
}

MonotoneComb comb_from_json(const Json& j, GroundSet ground, const std::string& path,
                            bool allow_signed) {
  if (!j.is_array()) fail(path, "expected an array of {\"coef\", \"gen\"} terms");
  std::vector<CombTerm> terms;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string at = path + "[" + std::to_string(i) + "]";
    CombTerm t{rational_from_json(member(j[i], "coef", at), at + ".coef"),
               subset_from_json(member(j[i], "gen", at), ground, at + ".gen")};
    if (!allow_signed && sgn(t.coef) < 0) fail(at + ".coef", "negative coefficient " + to_string(t.coef));
    terms.push_back(std::move(t));
  }
  return MonotoneComb::signed_unchecked(std::move(terms));
}

Json to_json(const Measure& mu) {
  Json weights = Json::array();
  for (const auto& w : mu.weights()) weights.push_back(to_json(w));
  return {{"m", mu.ground().size()}, {"weights", std::move(weights)}};
}

Measure measure_from_json(const Json& j, const std::string& path) {
  const long long m = integer_from_json(member(j, "m", path), path + ".m");
  if (m < 1 || m > kMaxGroundSize) fail(path + ".m", "m=" + std::to_string(m) + " outside [1, 12]");
  const GroundSet ground(static_cast<int>(m));
  const Json& weights = member(j, "weights", path);
  if (!weights.is_array() || weights.size() != ground.table_size()) {
    fail(path + ".weights", "expected an array of " + std::to_string(ground.table_size()) + " rationals");
  }
  std::vector<Rational> w;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    w.push_back(rational_from_json(weights[i], path + ".weights[" + std::to_string(i) + "]"));
  }
  try {
    return Measure(ground, std::move(w));
  } catch (const Error& e) {
    fail(path + ".weights", e.what());
  }
}

Json to_json(const Instance& inst) {
  Json gens = Json::array();
  for (const auto& f : inst.fns()) gens.push_back(f.generator().bits);
  return {{"measure", to_json(inst.measure())}, {"generators", std::move(gens)}};
}

Instance instance_from_json(const Json& j, const std::string& path) {
  Measure mu = measure_from_json(member(j, "measure", path), path + ".measure");
  const Json& gens = member(j, "generators", path);
  if (!gens.is_array() || gens.empty() || gens.size() > static_cast<std::size_t>(kMaxPartitionSize)) {
    fail(path + ".generators", "expected an array of 1 to 8 subset indices");
  }
  std::vector<SubsetId> ids;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    ids.push_back(subset_from_json(gens[i], mu.ground(), path + ".generators[" + std::to_string(i) + "]"));
  }
  return Instance(std::move(mu), ids);
}

Json to_json(const SetPartition& sigma) { return sigma.blocks(); }

SetPartition set_partition_from_json(const Json& j, int n, const std::string& path) {
  try {
    return SetPartition(n, j.get<std::vector<std::vector<int>>>());
  } catch (const Json::exception&) {
    fail(path, "expected an array of arrays of integers");
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

Json to_json(const FnSeries& p) {
  Json coeffs = Json::array();
  for (int d = 1; d <= p.degree(); ++d) coeffs.push_back(to_json(p.coeff(d)));
  return {{"D", p.degree()}, {"coeffs", std::move(coeffs)}};
}

FnSeries fn_series_from_json(const Json& j, GroundSet ground, const std::string& path,
                             bool allow_signed) {
  const long long degree = integer_from_json(member(j, "D", path), path + ".D");
  if (degree < 1 || degree > kMaxDegree) fail(path + ".D", "D=" + std::to_string(degree) + " outside [1, 10]");
  const Json& coeffs = member(j, "coeffs", path);
  if (!coeffs.is_array() || coeffs.size() != static_cast<std::size_t>(degree)) {
    fail(path + ".coeffs", "expected " + std::to_string(degree) + " coefficient functions");
  }
  std::vector<MonotoneComb> out;
  for (std::size_t d = 0; d < coeffs.size(); ++d) {
    out.push_back(comb_from_json(coeffs[d], ground, path + ".coeffs[" + std::to_string(d) + "]", allow_signed));
  }
  return FnSeries(std::move(out), allow_signed);
}

Json to_json(const ScalarSeries& s) { return rationals(s.coeffs()); }

Json to_json(const FkgReport& report) {
  Json out = {{"holds", report.holds}};
  if (report.witness) {
    out["witness"] = {{"a", report.witness->a.bits},
                      {"b", report.witness->b.bits},
                      {"meet_join", to_json(report.witness->meet_join)},
                      {"product", to_json(report.witness->product)}};
  }
  return out;
}

Json to_json(const ChainReport& report) {
  Json descent = Json::array();
  for (const auto& level : report.descent) {
    descent.push_back({{"distinguished", level.distinguished},
                       {"event", level.event.bits},
                       {"event_prob", to_json(level.event_prob)},
                       {"e0", to_json(level.e0)},
                       {"chain_holds", level.chain_holds},
                       {"null_event", level.null_event}});
  }
  return {{"holds", report.holds()},
          {"e", rationals(report.e_values)},
          {"i", rationals(report.i_values)},
          {"decreasing", bools(report.decreasing)},
          {"i_chain", bools(report.i_chain)},
          {"nonnegative", bools(report.nonnegative)},
          {"terminal_equality", report.terminal_equality},
          {"trivially_terminated", report.trivially_terminated},
          {"descent", std::move(descent)},
          {"descent_terminal_zero", report.descent_terminal_zero},
          {"descent_trivially_terminated", report.descent_trivially_terminated}};
}

Json to_json(const LemmaResult& result) {
  Json out = {{"holds", result.holds()},
              {"unconditional_holds", result.unconditional_holds},
              {"mu_c", to_json(result.mu_c)},
              {"mu_abc", to_json(result.mu_abc)},
              {"mu_ac", to_json(result.mu_ac)},
              {"mu_bc", to_json(result.mu_bc)}};
  if (result.conditional_holds) {
    out["conditional_holds"] = *result.conditional_holds;
  } else {
    out["conditional_holds"] = nullptr;
  }
  return out;
}

Json to_json(const IdentityResult& result) {
  Json out = {{"holds", result.holds}, {"lhs", to_json(result.lhs)}, {"rhs", to_json(result.rhs)}};
  out["first_mismatch"] = result.first_mismatch ? Json(*result.first_mismatch) : Json(nullptr);
  return out;
}

Json to_json(const NonnegResult& result) {
  Json out = {{"holds", result.holds}, {"lhs", to_json(result.lhs)}};
  out["first_negative"] = result.first_negative ? Json(*result.first_negative) : Json(nullptr);
  return out;
}

}  // namespace fkg::io
