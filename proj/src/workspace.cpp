#include "fahp/workspace.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "fahp/format.hpp"
#include "fahp/report.hpp"

namespace fahp {

using nlohmann::json;

namespace {

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::optional<double> parse_double(std::string_view text) {
  const std::string t = trim(text);
  if (t.empty()) return std::nullopt;
  double value = 0.0;
  const char* end = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(t.data(), end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

// Saaty linguistic vocabulary plus the fuzzy-scale names.
const std::map<std::string, int>& label_table() {
  static const std::map<std::string, int> table = {
      {"equally important", 1},
      {"just equal", 1},
      {"moderately important", 3},
      {"moderately important with one over another", 3},
      {"weak importance of one over another", 3},
      {"strongly important", 5},
      {"essential or strong importance", 5},
      {"very strongly important", 7},
      {"very strong importance", 7},
      {"extremely important", 9},
      {"extremely preferred", 9},
  };
  return table;
}

Judgment scaled_judgment(int saaty, bool reciprocal, Mode mode, const std::string& where) {
  if (saaty < kScaleMin || saaty > kScaleMax) {
    throw Error(ErrorCode::OutOfScale, where + ": Saaty value " + std::to_string(saaty) + " outside 1..9");
  }
  if (mode == Mode::Fuzzy) return scale_to_tfn(saaty, reciprocal);
  return reciprocal ? 1.0 / saaty : static_cast<double>(saaty);
}

bool reciprocal_flag(const json& value, const std::string& where) {
  if (!value.contains("reciprocal")) return false;
  if (!value["reciprocal"].is_boolean()) throw Error(ErrorCode::ParseError, where + ".reciprocal must be a boolean");
  return value["reciprocal"].get<bool>();
}

std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

const json& field(const json& doc, const char* key) {
  if (!doc.contains(key)) throw Error(ErrorCode::ParseError, std::string("missing field '") + key + "'");
  return doc[key];
}

std::vector<std::string> name_list(const json& doc, const char* key) {
  const json& list = field(doc, key);
  if (!list.is_array()) throw Error(ErrorCode::ParseError, std::string("'") + key + "' must be an array of strings");
  std::vector<std::string> out;
  for (const auto& item : list) {
    if (!item.is_string()) throw Error(ErrorCode::ParseError, std::string("'") + key + "' must hold strings");
    out.push_back(item.get<std::string>());
  }
  if (out.empty()) throw Error(ErrorCode::ParseError, std::string("'") + key + "' is empty");
  return out;
}

// Upper-triangle cells of one matrix, keyed by (i, j).
std::map<std::pair<std::size_t, std::size_t>, Judgment> read_cells(const json& cells, std::size_t n, Mode mode,
                                                                   const std::string& where) {
  if (!cells.is_array()) throw Error(ErrorCode::ParseError, where + " must be an array of cells");
  std::map<std::pair<std::size_t, std::size_t>, Judgment> out;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    const json& cell = cells[k];
    const std::string at = where + "[" + std::to_string(k) + "]";
    if (!cell.is_object() || !cell.contains("i") || !cell.contains("j") || !cell.contains("value")) {
      throw Error(ErrorCode::ParseError, at + " needs fields i, j and value");
    }
    if (!cell["i"].is_number_unsigned() || !cell["j"].is_number_unsigned()) {
      throw Error(ErrorCode::ParseError, at + ": i and j must be non-negative integers");
    }
    const auto i = cell["i"].get<std::size_t>();
    const auto j = cell["j"].get<std::size_t>();
    if (i >= j || j >= n) {
      throw Error(ErrorCode::ParseError, at + ": (" + std::to_string(i) + "," + std::to_string(j) +
                                             ") is not an upper-triangle cell of an order-" + std::to_string(n) +
                                             " matrix");
    }
    if (!out.emplace(std::pair{i, j}, parse_judgment(cell["value"], mode, at + ".value")).second) {
      throw Error(ErrorCode::ParseError,
                  at + ": cell (" + std::to_string(i) + "," + std::to_string(j) + ") given more than once");
    }
  }
  std::string missing;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!out.count({i, j})) missing += " (" + std::to_string(i) + "," + std::to_string(j) + ")";
  if (!missing.empty()) throw Error(ErrorCode::ParseError, where + " is missing cells" + missing);
  return out;
}

ComparisonMatrix crisp_from_cells(const std::map<std::pair<std::size_t, std::size_t>, Judgment>& cells,
                                  std::vector<std::string> labels) {
  const std::size_t n = labels.size();
  RawMatrix raw(n, std::vector<double>(n, 1.0));
  for (const auto& [ij, value] : cells) {
    const double v = std::get<double>(value);
    raw[ij.first][ij.second] = v;
  }
  return repair_matrix(raw, std::move(labels));
}

FuzzyMatrix fuzzy_from_cells(const std::map<std::pair<std::size_t, std::size_t>, Judgment>& cells,
                             std::vector<std::string> labels, Strictness strictness, const std::string& name,
                             std::vector<RepairEntry>& repairs) {
  const std::size_t n = labels.size();
  RawFuzzyMatrix raw(n, std::vector<Tfn>(n, kUnitTfn));
  for (const auto& [ij, value] : cells) {
    Tfn t = std::get<Tfn>(value);
    if (!is_ordered(t)) {
      if (strictness == Strictness::Strict) {
        throw Error(ErrorCode::MalformedTfn, "cell (" + std::to_string(ij.first) + "," + std::to_string(ij.second) +
                                                 ") = " + to_string(t) + " is not l <= m <= u",
                    CellRef{ij.first, ij.second});
      }
      std::array<double, 3> v{t.l, t.m, t.u};
      std::sort(v.begin(), v.end());
      const Tfn resorted{v[0], v[1], v[2]};
      repairs.push_back({name, {ij.first, ij.second}, to_string(t), to_string(resorted), "components re-sorted"});
      t = resorted;
    }
    raw[ij.first][ij.second] = t;
  }
  return repair_fuzzy_matrix(raw, std::move(labels));
}

template <typename Fn>
auto in_matrix(const std::string& name, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    throw e.with_context(name);
  }
}

LoadedProblem load_json_problem(std::string_view text, Strictness strictness) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, "malformed JSON at " + line_column(text, e.byte > 0 ? e.byte - 1 : 0));
  }
  if (!doc.is_object()) throw Error(ErrorCode::ParseError, "problem document must be a JSON object");
  const json& schema = field(doc, "schema");
  if (!schema.is_number_integer() || schema.get<int>() != kSchemaVersion) {
    throw Error(ErrorCode::ParseError, "unsupported schema version " + schema.dump());
  }
  const json& goal = field(doc, "goal");
  if (!goal.is_string()) throw Error(ErrorCode::ParseError, "'goal' must be a string");
  const json& mode_field = field(doc, "mode");
  if (!mode_field.is_string()) throw Error(ErrorCode::ParseError, "'mode' must be \"crisp\" or \"fuzzy\"");
  const Mode mode = parse_mode(mode_field.get<std::string>());
  auto criteria = name_list(doc, "criteria");
  auto alternatives = name_list(doc, "alternatives");
  const json& alt_matrices = field(doc, "alternative_matrices");
  if (!alt_matrices.is_object()) {
    throw Error(ErrorCode::ParseError, "'alternative_matrices' must be an object keyed by criterion name");
  }
  for (const auto& [key, value] : alt_matrices.items()) {
    if (std::find(criteria.begin(), criteria.end(), key) == criteria.end()) {
      throw Error(ErrorCode::ParseError, "alternative_matrices has unknown criterion '" + key + "'");
    }
  }
  const auto criteria_cells = read_cells(field(doc, "criteria_matrix"), criteria.size(), mode, "criteria_matrix");
  std::vector<std::map<std::pair<std::size_t, std::size_t>, Judgment>> alt_cells;
  for (const auto& c : criteria) {
    if (!alt_matrices.contains(c)) {
      throw Error(ErrorCode::ParseError, "alternative_matrices has no entry for criterion '" + c + "'");
    }
    alt_cells.push_back(read_cells(alt_matrices[c], alternatives.size(), mode, "alternative_matrices." + c));
  }

  std::vector<RepairEntry> repairs;
  if (mode == Mode::Crisp) {
    CrispJudgments j{in_matrix("criteria", [&] { return crisp_from_cells(criteria_cells, criteria); }), {}};
    for (std::size_t c = 0; c < criteria.size(); ++c) {
      j.alternatives.push_back(in_matrix(criteria[c], [&] { return crisp_from_cells(alt_cells[c], alternatives); }));
    }
    return {DecisionProblem::make_crisp(goal.get<std::string>(), std::move(criteria), std::move(alternatives),
                                        std::move(j)),
            std::move(repairs)};
  }
  FuzzyJudgments j{in_matrix("criteria",
                             [&] { return fuzzy_from_cells(criteria_cells, criteria, strictness, "criteria", repairs); }),
                   {}};
  for (std::size_t c = 0; c < criteria.size(); ++c) {
    j.alternatives.push_back(in_matrix(
        criteria[c], [&] { return fuzzy_from_cells(alt_cells[c], alternatives, strictness, criteria[c], repairs); }));
  }
  return {DecisionProblem::make_fuzzy(goal.get<std::string>(), std::move(criteria), std::move(alternatives),
                                      std::move(j)),
          std::move(repairs)};
}

struct CsvBlock {
  std::string name;
  std::size_t first_line = 0;
  std::string body;
};

LoadedProblem load_csv_problem(std::string_view text, Strictness strictness) {
  std::string goal;
  std::optional<Mode> mode;
  std::vector<std::string> criteria;
  std::vector<std::string> alternatives;
  std::vector<CsvBlock> blocks;

  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '#') {
      const auto colon = t.find(':');
      if (colon == std::string::npos) continue;
      const std::string key = lower(trim(std::string_view(t).substr(1, colon - 1)));
      const std::string value = trim(std::string_view(t).substr(colon + 1));
      if (key == "goal") {
        goal = value;
      } else if (key == "mode") {
        mode = parse_mode(value);
      } else if (key == "criteria") {
        criteria = split(value, ',');
      } else if (key == "alternatives") {
        alternatives = split(value, ',');
      } else if (key == "matrix") {
        blocks.push_back({value, line_no + 1, {}});
      }
      continue;
    }
    if (blocks.empty()) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": matrix row before any '# matrix:' header");
    }
    blocks.back().body += t;
    blocks.back().body += '\n';
  }
  if (!mode) throw Error(ErrorCode::ParseError, "missing '# mode:' header");
  if (criteria.empty() || (criteria.size() == 1 && criteria[0].empty())) {
    throw Error(ErrorCode::ParseError, "missing or empty '# criteria:' header");
  }
  if (alternatives.empty() || (alternatives.size() == 1 && alternatives[0].empty())) {
    throw Error(ErrorCode::ParseError, "missing or empty '# alternatives:' header");
  }

  std::map<std::string, const CsvBlock*> by_name;
  for (const auto& b : blocks) {
    if (!by_name.emplace(b.name, &b).second) throw Error(ErrorCode::ParseError, "matrix '" + b.name + "' given twice");
    if (b.name != "criteria" && std::find(criteria.begin(), criteria.end(), b.name) == criteria.end()) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(b.first_line - 1) + ": unknown matrix '" + b.name + "'");
    }
  }
  auto block = [&](const std::string& name) -> const CsvBlock& {
    auto it = by_name.find(name);
    if (it == by_name.end()) throw Error(ErrorCode::ParseError, "no '# matrix: " + name + "' section");
    return *it->second;
  };

  std::vector<RepairEntry> repairs;
  auto crisp_matrix = [&](const std::string& name, const std::vector<std::string>& labels) {
    return in_matrix(name, [&] {
      const CsvBlock& b = block(name);
      auto raw = std::get<RawMatrix>(import_matrix_csv(b.body, Mode::Crisp));
      if (strictness == Strictness::Strict) return validate_matrix(raw, labels, Strictness::Strict);
      auto fixed = reconcile_matrix(raw, labels, name);
      repairs.insert(repairs.end(), fixed.repairs.begin(), fixed.repairs.end());
      return std::move(fixed.matrix);
    });
  };
  auto fuzzy_matrix = [&](const std::string& name, const std::vector<std::string>& labels) {
    return in_matrix(name, [&] {
      const CsvBlock& b = block(name);
      auto raw = std::get<RawFuzzyMatrix>(import_matrix_csv(b.body, Mode::Fuzzy));
      if (strictness == Strictness::Strict) return validate_fuzzy_matrix(raw, labels);
      auto fixed = reconcile_fuzzy_matrix(raw, labels, name);
      repairs.insert(repairs.end(), fixed.repairs.begin(), fixed.repairs.end());
      return std::move(fixed.matrix);
    });
  };

  if (*mode == Mode::Crisp) {
    CrispJudgments j{crisp_matrix("criteria", criteria), {}};
    for (const auto& c : criteria) j.alternatives.push_back(crisp_matrix(c, alternatives));
    return {DecisionProblem::make_crisp(goal, criteria, alternatives, std::move(j)), std::move(repairs)};
  }
  FuzzyJudgments j{fuzzy_matrix("criteria", criteria), {}};
  for (const auto& c : criteria) j.alternatives.push_back(fuzzy_matrix(c, alternatives));
  return {DecisionProblem::make_fuzzy(goal, criteria, alternatives, std::move(j)), std::move(repairs)};
}

template <typename Matrix, typename CellFn>
json cells_json(const Matrix& m, CellFn&& cell) {
  json out = json::array();
  for (std::size_t i = 0; i < m.order(); ++i)
    for (std::size_t j = i + 1; j < m.order(); ++j) out.push_back({{"i", i}, {"j", j}, {"value", cell(m(i, j))}});
  return out;
}

}  // namespace

int label_to_saaty(std::string_view label) {
  const auto& table = label_table();
  auto it = table.find(lower(trim(label)));
  if (it == table.end()) throw Error(ErrorCode::UnknownLabel, "unknown judgment label '" + std::string(label) + "'");
  return it->second;
}

Judgment parse_judgment(const json& value, Mode mode, const std::string& where) {
  if (value.is_number()) {
    const double v = value.get<double>();
    if (!(v > 0.0)) throw Error(ErrorCode::NonPositiveEntry, where + " = " + format_number(v) + " is not positive");
    if (mode == Mode::Fuzzy) return Tfn{v, v, v};
    return v;
  }
  if (value.is_array()) {
    if (mode == Mode::Crisp) throw Error(ErrorCode::ModeMismatch, where + ": fuzzy triple in a crisp problem");
    if (value.size() != 3 || !std::all_of(value.begin(), value.end(), [](const json& x) { return x.is_number(); })) {
      throw Error(ErrorCode::ParseError, where + " must be [l, m, u]");
    }
    const Tfn t{value[0].get<double>(), value[1].get<double>(), value[2].get<double>()};
    if (!(std::min({t.l, t.m, t.u}) > 0.0)) {
      throw Error(ErrorCode::NonPositiveEntry, where + " = " + to_string(t) + " has a non-positive component");
    }
    return t;  // ordering is checked by the matrix builder so lenient mode can re-sort
  }
  if (value.is_object()) {
    if (value.contains("saaty")) {
      if (!value["saaty"].is_number_integer()) throw Error(ErrorCode::ParseError, where + ".saaty must be an integer");
      return scaled_judgment(value["saaty"].get<int>(), reciprocal_flag(value, where), mode, where);
    }
    if (value.contains("label")) {
      if (!value["label"].is_string()) throw Error(ErrorCode::ParseError, where + ".label must be a string");
      const int saaty = [&] {
        try {
          return label_to_saaty(value["label"].get<std::string>());
        } catch (const Error& e) {
          throw Error(ErrorCode::UnknownLabel, where + ": " + e.detail());
        }
      }();
      return scaled_judgment(saaty, reciprocal_flag(value, where), mode, where);
    }
  }
  throw Error(ErrorCode::ParseError, where + " must be a number, {\"saaty\": k}, {\"label\": ...} or [l, m, u]");
}

json judgment_to_json(const Judgment& judgment) {
  if (const double* v = std::get_if<double>(&judgment)) return *v;
  const Tfn& t = std::get<Tfn>(judgment);
  return json::array({t.l, t.m, t.u});
}

LoadedProblem load_problem_text(std::string_view text, Strictness strictness) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) throw Error(ErrorCode::ParseError, "empty problem document");
  if (text[first] == '{') return load_json_problem(text, strictness);
  return load_csv_problem(text, strictness);
}

LoadedProblem load_problem(const std::filesystem::path& path, Strictness strictness) {
  return load_problem_text(read_file(path), strictness);
}

std::string problem_to_json(const DecisionProblem& p) {
  json doc;
  doc["schema"] = kSchemaVersion;
  doc["goal"] = p.goal();
  doc["mode"] = std::string(to_string(p.mode()));
  doc["criteria"] = p.criteria();
  doc["alternatives"] = p.alternatives();
  json alts = json::object();
  if (p.mode() == Mode::Crisp) {
    auto cell = [](double v) { return json(v); };
    doc["criteria_matrix"] = cells_json(p.crisp().criteria, cell);
    for (std::size_t c = 0; c < p.criteria().size(); ++c) {
      alts[p.criteria()[c]] = cells_json(p.crisp().alternatives[c], cell);
    }
  } else {
    auto cell = [](const Tfn& t) { return json::array({t.l, t.m, t.u}); };
    doc["criteria_matrix"] = cells_json(p.fuzzy().criteria, cell);
    for (std::size_t c = 0; c < p.criteria().size(); ++c) {
      alts[p.criteria()[c]] = cells_json(p.fuzzy().alternatives[c], cell);
    }
  }
  doc["alternative_matrices"] = std::move(alts);
  return doc.dump(2) + "\n";
}

ImportedMatrix import_matrix_csv(std::string_view text, Mode mode) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    rows.push_back(split(line, ','));
  }
  const std::size_t n = rows.size();
  if (n == 0) throw Error(ErrorCode::ParseError, "no matrix rows");
  for (std::size_t r = 0; r < n; ++r) {
    if (rows[r].size() != n) {
      throw Error(ErrorCode::RaggedRows, "row " + std::to_string(r) + " has " + std::to_string(rows[r].size()) +
                                             " fields, expected " + std::to_string(n));
    }
  }
  auto bad = [](std::size_t r, std::size_t c, const std::string& field) {
    return Error(ErrorCode::BadNumber,
                 "row " + std::to_string(r) + ", column " + std::to_string(c) + ": '" + field + "'", CellRef{r, c});
  };
  if (mode == Mode::Crisp) {
    RawMatrix raw(n, std::vector<double>(n));
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        const auto parts = split(rows[r][c], '/');
        std::optional<double> v;
        if (parts.size() == 1) {
          v = parse_double(parts[0]);
        } else if (parts.size() == 2) {
          auto num = parse_double(parts[0]);
          auto den = parse_double(parts[1]);
          if (num && den && *den != 0.0) v = *num / *den;
        }
        if (!v) throw bad(r, c, rows[r][c]);
        raw[r][c] = *v;
      }
    }
    return raw;
  }
  RawFuzzyMatrix raw(n, std::vector<Tfn>(n));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const auto parts = split(rows[r][c], '/');
      if (parts.size() != 3) throw bad(r, c, rows[r][c]);
      auto l = parse_double(parts[0]);
      auto m = parse_double(parts[1]);
      auto u = parse_double(parts[2]);
      if (!l || !m || !u) throw bad(r, c, rows[r][c]);
      raw[r][c] = Tfn{*l, *m, *u};  // ordering is a validation concern
    }
  }
  return raw;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw Error(ErrorCode::IoError, "write to " + tmp.string() + " failed");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw Error(ErrorCode::IoError, "cannot move result into " + path.string() + ": " + ec.message());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void save_result(const RankedResult& result, const std::filesystem::path& path) {
  write_file_atomic(path, to_json(result).dump(2) + "\n");
}

RankedResult load_result(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  try {
    return result_from_json(json::parse(text));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
}

}  // namespace fahp
