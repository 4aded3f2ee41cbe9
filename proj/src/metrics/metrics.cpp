// Copyright 2026 The ABFS Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "abfs/metrics/metrics.hpp"

#include <cmath>

#include <fmt/format.h>

namespace abfs::metrics {

std::optional<double> SuccessRate(std::size_t n_suc, std::size_t n) {
  if (n == 0) return std::nullopt;
  return static_cast<double>(n_suc) / static_cast<double>(n) * 100.0;
}

double ChangeRate(std::size_t edits, std::size_t tokens) {
  if (tokens == 0) return 0;
  return static_cast<double>(edits) / static_cast<double>(tokens) * 100.0;
}

std::optional<double> Mean(std::span<const double> values) {
  if (values.empty()) return std::nullopt;
  double sum = 0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

Efficiency EfficiencyStats(std::span<const OutcomeSummary> outcomes) {
  std::vector<double> times, queries;
  for (const auto& o : outcomes) {
    if (!o.success) continue;
    times.push_back(o.wall_seconds);
    queries.push_back(static_cast<double>(o.queries));
  }
  return {Mean(times), Mean(queries)};
}

CampaignStats Aggregate(std::span<const OutcomeSummary> outcomes) {
  CampaignStats s;
  s.n = outcomes.size();
  std::vector<double> c_rates, ppls;
  for (const auto& o : outcomes) {
    if (o.skipped) ++s.skipped;
    if (!o.success) continue;
    ++s.n_suc;
    c_rates.push_back(o.change_rate);
    if (o.ppl && std::isfinite(*o.ppl)) ppls.push_back(*o.ppl);
  }
  s.s_rate = SuccessRate(s.n_suc, s.n);
  s.s_rate_conditional = SuccessRate(s.n_suc, s.n - s.skipped);
  s.c_rate = Mean(c_rates);
  s.ppl = Mean(ppls);
  const Efficiency e = EfficiencyStats(outcomes);
  s.t_o = e.t_o;
  s.q_n = e.q_n;
  return s;
}

namespace {

std::optional<double> MeanOf(std::span<const CampaignStats> repeats,
                             std::optional<double> CampaignStats::*field) {
  std::vector<double> values;
  for (const auto& r : repeats) {
    if (r.*field) values.push_back(*(r.*field));
  }
  return Mean(values);
}

}  // namespace

CampaignStats MeanOfRepeats(std::span<const CampaignStats> repeats) {
  CampaignStats m;
  for (const auto& r : repeats) {
    m.n += r.n;
    m.n_suc += r.n_suc;
    m.skipped += r.skipped;
    m.errors += r.errors;
  }
  m.s_rate = MeanOf(repeats, &CampaignStats::s_rate);
  m.s_rate_conditional = MeanOf(repeats, &CampaignStats::s_rate_conditional);
  m.c_rate = MeanOf(repeats, &CampaignStats::c_rate);
  m.ppl = MeanOf(repeats, &CampaignStats::ppl);
  m.t_o = MeanOf(repeats, &CampaignStats::t_o);
  m.q_n = MeanOf(repeats, &CampaignStats::q_n);
  return m;
}

std::optional<double> TransferEvaluate(std::span<const TransferCase> cases,
                                       const threat::Classifier& other) {
  if (cases.empty()) return std::nullopt;
  std::size_t fooled = 0;
  for (const auto& c : cases) {
    if (other.Classify(c.text).label != c.ground_truth) ++fooled;
  }
  return SuccessRate(fooled, cases.size());
}

std::string FormatMetric(const std::optional<double>& value) {
  if (!value) return "—";
  if (std::isinf(*value)) return "inf";
  return fmt::format("{:.3f}", *value);
}

namespace {

nlohmann::json OptionalJson(const std::optional<double>& v) {
  if (!v || !std::isfinite(*v)) return nullptr;
  return *v;
}

std::optional<double> OptionalFrom(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

}  // namespace

void to_json(nlohmann::json& j, const CampaignStats& s) {
  j = nlohmann::json{{"n", s.n},
                     {"n_suc", s.n_suc},
                     {"skipped", s.skipped},
                     {"errors", s.errors},
                     {"s_rate", OptionalJson(s.s_rate)},
                     {"s_rate_conditional", OptionalJson(s.s_rate_conditional)},
                     {"c_rate", OptionalJson(s.c_rate)},
                     {"ppl", OptionalJson(s.ppl)},
                     {"t_o", OptionalJson(s.t_o)},
                     {"q_n", OptionalJson(s.q_n)}};
}

void from_json(const nlohmann::json& j, CampaignStats& s) {
  s.n = j.at("n").get<std::size_t>();
  s.n_suc = j.at("n_suc").get<std::size_t>();
  s.skipped = j.at("skipped").get<std::size_t>();
  s.errors = j.value("errors", std::size_t{0});
  s.s_rate = OptionalFrom(j, "s_rate");
  s.s_rate_conditional = OptionalFrom(j, "s_rate_conditional");
  s.c_rate = OptionalFrom(j, "c_rate");
  s.ppl = OptionalFrom(j, "ppl");
  s.t_o = OptionalFrom(j, "t_o");
  s.q_n = OptionalFrom(j, "q_n");
}

}  // namespace abfs::metrics
