#include <cmath>

#include "msm/io.hpp"

namespace msm {

using nlohmann::json;

namespace {

json number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

std::string fraction(const Rational& r) { return std::to_string(r.num) + "/" + std::to_string(r.den); }

json bound_json(const BoundSpec& b) {
  json j = {{"theorem", std::string(theorem_name(b.theorem))}, {"n", b.n}, {"p", b.p}, {"factor", fraction(b.factor)}};
  if (b.theorem == Theorem::T7) j["beta"] = b.beta;
  return j;
}

}  // namespace

json to_json(const BenchmarkReport& report) {
  json agents = json::array();
  for (const AgentBenchmark& a : report.agents) {
    json bounds = json::array();
    for (const BoundCheck& c : a.bounds) {
      json b = bound_json(c.bound);
      b["benchmark"] = c.benchmark;
      b["witness"] = c.witness.items();
      b["required"] = c.required;
      b["margin"] = number(c.margin);
      b["passed"] = c.passed;
      bounds.push_back(std::move(b));
    }
    json skipped = json::array();
    for (Theorem t : a.not_applicable) skipped.push_back(std::string(theorem_name(t)));
    agents.push_back({{"agent", a.agent},
                      {"policy", a.policy},
                      {"achieved", a.achieved},
                      {"opt", a.opt.value},
                      {"opt_witness", a.opt.witness.items()},
                      {"opt_minus", a.opt_minus.value},
                      {"opt_minus_witness", a.opt_minus.witness.items()},
                      {"bounds", bounds},
                      {"not_applicable", skipped}});
  }
  return {{"agents", agents}, {"passed", report.passed}};
}

json to_json(const FairnessReport& report) {
  json pairs = json::array();
  for (const PairFairness& p : report.pairs) {
    json j = {{"i", p.i},
              {"j", p.j},
              {"alpha_ef1", number(p.alpha_ef1)},
              {"alpha_fef1", number(p.alpha_fef1)},
              {"alpha_theorem", number(p.alpha_theorem)},
              {"compared", p.compared.items()},
              {"own_value", p.own_value},
              {"compared_opt", p.compared_opt}};
    if (p.theorem_applicable) {
      j["theorem3_passed"] = p.theorem3_passed;
      if (p.theorem4_passed) j["theorem4_passed"] = *p.theorem4_passed;
    }
    pairs.push_back(std::move(j));
  }
  return {{"pairs", pairs},
          {"min_ef1", number(report.min_ef1)},
          {"min_fef1", number(report.min_fef1)},
          {"min_theorem", number(report.min_theorem)},
          {"passed", report.theorem_bounds_passed}};
}

json to_json(const ExanteReport& report) {
  json agents = json::array();
  for (const ExanteAgentReport& a : report.agents) {
    agents.push_back({{"agent", a.agent},
                      {"bound", bound_json(a.bound)},
                      {"opt", a.opt},
                      {"opt_witness", a.opt_witness.items()},
                      {"required", a.required},
                      {"expected", a.expected},
                      {"ci99", {a.ci_low, a.ci_high}},
                      {"passed", a.passed}});
  }
  return {{"mode", report.exact ? "exact" : "montecarlo"},
          {"runs", report.runs},
          {"agents", agents},
          {"passed", report.passed}};
}

json to_json(const SaturationReport& report) {
  json j = {{"regime", report.cardinality_regime ? "cardinality" : "p-system"},
            {"complete", report.complete},
            {"passed", report.passed}};
  if (report.agent) j["agent"] = *report.agent;
  if (report.item) j["item"] = *report.item;
  return j;
}

json to_json(const FleetSummary& summary) {
  json failures = json::array();
  for (const FleetCheck& c : summary.failures) {
    failures.push_back({{"instance", c.instance},
                        {"agent", c.agent},
                        {"check", c.check},
                        {"achieved", c.achieved},
                        {"required", c.required}});
  }
  return {{"regime", summary.regime},
          {"instances", summary.instances},
          {"checks", summary.checks},
          {"violations", summary.violations},
          {"min_margin", number(summary.min_margin)},
          {"failures", failures},
          {"passed", summary.violations == 0}};
}

}  // namespace msm
