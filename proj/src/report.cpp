#include "fahp/report.hpp"

#include <sstream>

#include "fahp/format.hpp"

namespace fahp {

using nlohmann::json;

namespace {

json rounded_array(const std::vector<double>& values) {
  json out = json::array();
  for (double v : values) out.push_back(round4(v));
  return out;
}

WeightMethod parse_method(const std::string& text) {
  if (text == "eigen") return WeightMethod::Eigen;
  if (text == "geomean") return WeightMethod::GeometricMean;
  if (text == "extent") return WeightMethod::Extent;
  throw Error(ErrorCode::ParseError, "unknown weight method '" + text + "'");
}

json weights_json(const WeightVector& w) {
  return {{"method", std::string(to_string(w.method))}, {"weights", rounded_array(w.weights)}};
}

WeightVector weights_from_json(const json& j) {
  return {j.at("weights").get<std::vector<double>>(), parse_method(j.at("method").get<std::string>())};
}

std::vector<std::string> names_in_order(const std::vector<std::string>& names, const std::vector<std::size_t>& order) {
  std::vector<std::string> out;
  for (std::size_t i : order) out.push_back(names.at(i));
  return out;
}

std::size_t width_of(const std::vector<std::string>& names, std::size_t floor) {
  std::size_t w = floor;
  for (const auto& n : names) w = std::max(w, n.size());
  return w;
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string lpad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

}  // namespace

json to_json(const ConsistencyReport& report) {
  return {{"lambda_max", round4(report.lambda_max)},
          {"ci", round4(report.ci)},
          {"cr", round4(report.cr)},
          {"consistent", report.consistent}};
}

json to_json(const Tfn& t) { return json::array({round4(t.l), round4(t.m), round4(t.u)}); }

json to_json(const RankedResult& r) {
  json locals = json::array();
  for (std::size_t c = 0; c < r.local_weights.size(); ++c) {
    json entry = weights_json(r.local_weights[c]);
    entry["criterion"] = r.criteria.at(c);
    locals.push_back(std::move(entry));
  }
  json diagnostics = json::array();
  for (const auto& d : r.diagnostics) {
    json entry = to_json(d.report);
    entry["matrix"] = d.matrix;
    diagnostics.push_back(std::move(entry));
  }
  return {{"label", r.label},
          {"criteria", r.criteria},
          {"alternatives", r.alternatives},
          {"criteria_weights", weights_json(r.criteria_weights)},
          {"local_weights", std::move(locals)},
          {"global_scores", rounded_array(r.global_scores)},
          {"rank_order", r.rank_order},
          {"ranking", names_in_order(r.alternatives, r.rank_order)},
          {"diagnostics", std::move(diagnostics)}};
}

RankedResult result_from_json(const json& j) {
  RankedResult r;
  r.label = j.at("label").get<std::string>();
  r.criteria = j.at("criteria").get<std::vector<std::string>>();
  r.alternatives = j.at("alternatives").get<std::vector<std::string>>();
  r.criteria_weights = weights_from_json(j.at("criteria_weights"));
  for (const auto& entry : j.at("local_weights")) r.local_weights.push_back(weights_from_json(entry));
  r.global_scores = j.at("global_scores").get<std::vector<double>>();
  r.rank_order = j.at("rank_order").get<std::vector<std::size_t>>();
  for (const auto& entry : j.at("diagnostics")) {
    r.diagnostics.push_back({entry.at("matrix").get<std::string>(),
                             {entry.at("lambda_max").get<double>(), entry.at("ci").get<double>(),
                              entry.at("cr").get<double>(), entry.at("consistent").get<bool>()}});
  }
  return r;
}

RankedResult rounded(const RankedResult& result) {
  RankedResult r = result;
  auto round_all = [](std::vector<double>& v) {
    for (double& x : v) x = round4(x);
  };
  round_all(r.criteria_weights.weights);
  for (auto& w : r.local_weights) round_all(w.weights);
  round_all(r.global_scores);
  for (auto& d : r.diagnostics) {
    d.report.lambda_max = round4(d.report.lambda_max);
    d.report.ci = round4(d.report.ci);
    d.report.cr = round4(d.report.cr);
  }
  return r;
}

json to_json(const ComparisonReport& report) {
  json flips = json::array();
  for (const auto& f : report.flips) {
    flips.push_back({{"above_in_a", report.alternatives.at(f.first)}, {"above_in_b", report.alternatives.at(f.second)}});
  }
  return {{"alternatives", report.alternatives},
          {"a", {{"label", report.label_a},
                 {"scores", rounded_array(report.scores_a)},
                 {"rank_order", report.rank_a},
                 {"ranking", names_in_order(report.alternatives, report.rank_a)}}},
          {"b", {{"label", report.label_b},
                 {"scores", rounded_array(report.scores_b)},
                 {"rank_order", report.rank_b},
                 {"ranking", names_in_order(report.alternatives, report.rank_b)}}},
          {"flips", std::move(flips)},
          {"top_agrees", report.top_agrees}};
}

json to_json(const ProbeReport& report) {
  json flips = json::array();
  for (const auto& f : report.flips) {
    flips.push_back({{"was_above", report.before.alternatives.at(f.first)},
                     {"now_above", report.before.alternatives.at(f.second)}});
  }
  json out = {{"before", to_json(report.before)}, {"after", to_json(report.after)}, {"flips", std::move(flips)},
              {"rank_reversal", !report.flips.empty()}};
  out["added"] = report.added ? json(*report.added) : json(nullptr);
  return out;
}

json to_json(const std::vector<RepairEntry>& repairs) {
  json out = json::array();
  for (const auto& r : repairs) {
    out.push_back({{"matrix", r.matrix},
                   {"row", r.cell.row},
                   {"col", r.cell.col},
                   {"before", r.before},
                   {"after", r.after},
                   {"reason", r.reason}});
  }
  return out;
}

std::string render_text(const RankedResult& r) {
  std::ostringstream out;
  const std::size_t cw = width_of(r.criteria, 9);
  const std::size_t aw = width_of(r.alternatives, 11);
  out << "Result (" << r.label << ")\n";
  out << "Criteria weights:\n";
  for (std::size_t c = 0; c < r.criteria.size(); ++c) {
    out << "  " << pad(r.criteria[c], cw) << "  " << fixed4(r.criteria_weights[c]) << '\n';
  }
  out << "Local weights:\n  " << pad("", cw);
  for (const auto& a : r.alternatives) out << "  " << lpad(a, std::max<std::size_t>(a.size(), 6));
  out << '\n';
  for (std::size_t c = 0; c < r.criteria.size(); ++c) {
    out << "  " << pad(r.criteria[c], cw);
    for (std::size_t a = 0; a < r.alternatives.size(); ++a) {
      out << "  " << lpad(fixed4(r.local_weights[c][a]), std::max<std::size_t>(r.alternatives[a].size(), 6));
    }
    out << '\n';
  }
  out << "Global scores:\n";
  for (std::size_t a = 0; a < r.alternatives.size(); ++a) {
    out << "  " << pad(r.alternatives[a], aw) << "  " << fixed4(r.global_scores[a]) << '\n';
  }
  out << "Ranking:";
  for (std::size_t k = 0; k < r.rank_order.size(); ++k) {
    out << (k == 0 ? " " : " > ") << r.alternatives[r.rank_order[k]];
  }
  out << '\n';
  if (!r.diagnostics.empty()) {
    out << "Consistency:\n";
    for (const auto& d : r.diagnostics) out << render_consistency(d.matrix, d.report);
  }
  return out.str();
}

std::string render_consistency(const std::string& matrix, const ConsistencyReport& report) {
  std::ostringstream out;
  out << "  " << pad(matrix, 12) << "  lambda_max " << fixed4(report.lambda_max) << "  CI " << fixed4(report.ci)
      << "  CR " << fixed4(report.cr) << "  " << (report.consistent ? "consistent" : "INCONSISTENT (CR > 0.10)")
      << '\n';
  return out.str();
}

std::string render_text(const ComparisonReport& report) {
  std::ostringstream out;
  const std::size_t aw = width_of(report.alternatives, 11);
  const std::size_t la = std::max<std::size_t>(report.label_a.size(), 6);
  const std::size_t lb = std::max<std::size_t>(report.label_b.size(), 6);
  out << pad("Alternative", aw) << "  " << lpad(report.label_a, la) << "  " << lpad(report.label_b, lb) << '\n';
  for (std::size_t a = 0; a < report.alternatives.size(); ++a) {
    out << pad(report.alternatives[a], aw) << "  " << lpad(fixed4(report.scores_a[a]), la) << "  "
        << lpad(fixed4(report.scores_b[a]), lb) << '\n';
  }
  auto ranking = [&](const std::vector<std::size_t>& order) {
    std::string s;
    for (std::size_t k = 0; k < order.size(); ++k) s += (k == 0 ? "" : " > ") + report.alternatives[order[k]];
    return s;
  };
  out << "Ranking " << report.label_a << ": " << ranking(report.rank_a) << '\n';
  out << "Ranking " << report.label_b << ": " << ranking(report.rank_b) << '\n';
  out << "Top choice " << (report.top_agrees ? "agrees" : "differs") << '\n';
  out << "Rank flips: " << report.flips.size() << '\n';
  for (const auto& f : report.flips) {
    out << "  " << report.alternatives[f.first] << " above " << report.alternatives[f.second] << " in "
        << report.label_a << ", below in " << report.label_b << '\n';
  }
  return out.str();
}

std::string render_text(const ProbeReport& report) {
  std::ostringstream out;
  if (!report.added) {
    out << "No alternative added; nothing to probe.\n";
    out << render_text(report.before);
    return out.str();
  }
  out << "Before adding '" << *report.added << "':\n" << render_text(report.before);
  out << "\nAfter adding '" << *report.added << "':\n" << render_text(report.after);
  out << "\nRank reversal among original alternatives: " << (report.flips.empty() ? "none" : "YES") << '\n';
  for (const auto& f : report.flips) {
    out << "  " << report.before.alternatives[f.first] << " was above " << report.before.alternatives[f.second]
        << ", now below\n";
  }
  return out.str();
}

std::string render_repairs(const std::vector<RepairEntry>& repairs) {
  std::ostringstream out;
  out << "Repairs: " << repairs.size() << '\n';
  for (const auto& r : repairs) {
    out << "  " << r.matrix << " (" << r.cell.row << "," << r.cell.col << "): " << r.before << " -> " << r.after
        << "  [" << r.reason << "]\n";
  }
  return out.str();
}

std::string render_extents(const ExtentWeights& analysis, const std::vector<std::string>& labels) {
  std::ostringstream out;
  const std::size_t w = width_of(labels, 6);
  const auto& e = analysis.extents;
  out << pad("", w) << "  " << pad("row sum", 26) << "  column sum\n";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out << pad(labels[i], w) << "  " << pad(to_string(e.row_sums[i]), 26) << "  " << to_string(e.column_sums[i])
        << '\n';
  }
  out << pad("total", w) << "  " << to_string(e.total) << '\n';
  out << "Synthetic extents:\n";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out << "  S" << (i + 1) << " " << pad(labels[i], w) << "  (" << fixed4(e.extents[i].l) << ", "
        << fixed4(e.extents[i].m) << ", " << fixed4(e.extents[i].u) << ")\n";
  }
  out << "Degrees of possibility V(S_i >= S_k):\n";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out << "  S" << (i + 1);
    for (std::size_t k = 0; k < labels.size(); ++k) {
      out << "  " << (i == k ? std::string("     -") : fixed4(analysis.possibilities(i, k)));
    }
    out << "   min " << fixed4(analysis.raw[i]) << '\n';
  }
  out << "Weights:";
  for (std::size_t i = 0; i < labels.size(); ++i) out << "  " << labels[i] << " " << fixed4(analysis.weights[i]);
  out << '\n';
  return out.str();
}

}  // namespace fahp
