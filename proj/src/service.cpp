#include "fahp/service.hpp"

#include <ctime>
#include <mutex>
#include <random>
#include <set>
#include <sstream>

#include <httplib.h>

#include "fahp/format.hpp"
#include "fahp/report.hpp"
#include "fahp/workspace.hpp"

namespace fahp::service {

using nlohmann::json;

namespace {

constexpr const char* kCriteriaSelector = "criteria";

using Cells = std::map<std::pair<std::size_t, std::size_t>, Judgment>;

std::string iso_time(std::chrono::system_clock::time_point t) {
  const std::time_t secs = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ServiceError bad_request(std::string detail) { return ServiceError(400, "BadRequest", std::move(detail)); }

ServiceError from_engine(const Error& e) {
  switch (e.code()) {
    case ErrorCode::ParseError:
    case ErrorCode::UnknownLabel:
    case ErrorCode::ModeMismatch:
    case ErrorCode::BadNumber:
      return ServiceError(400, std::string(to_string(e.code())), e.detail());
    case ErrorCode::OutOfScale:
    case ErrorCode::NonPositiveEntry:
      return ServiceError(422, "CellOutOfRange", e.detail());
    default:
      return ServiceError(422, std::string(to_string(e.code())), e.detail());
  }
}

void check_names(const std::vector<std::string>& names, const char* what) {
  if (names.size() < 2) throw bad_request(std::string("need at least two ") + what);
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (n.empty()) throw bad_request(std::string("empty name among ") + what);
    if (!seen.insert(n).second) throw bad_request(std::string("duplicate name '") + n + "' among " + what);
  }
}

std::string solve_key(const SolveRequest& request) {
  if (const auto* m = std::get_if<WeightMethod>(&request)) return "method:" + std::string(to_string(*m));
  if (const auto* a = std::get_if<Attitude>(&request)) return "attitude:" + std::string(to_string(*a));
  return "default";
}

WeightMethod parse_method(const std::string& text) {
  if (text == "eigen") return WeightMethod::Eigen;
  if (text == "geomean") return WeightMethod::GeometricMean;
  if (text == "extent") return WeightMethod::Extent;
  throw bad_request("unknown method '" + text + "'");
}

Attitude attitude_or_throw(const std::string& text) {
  try {
    return parse_attitude(text);
  } catch (const Error&) {
    throw bad_request("unknown attitude '" + text + "'");
  }
}

json parse_body(const std::string& body) {
  if (body.find_first_not_of(" \t\r\n") == std::string::npos) return json::object();
  try {
    json j = json::parse(body);
    if (!j.is_object()) throw bad_request("request body must be a JSON object");
    return j;
  } catch (const json::parse_error& e) {
    throw bad_request(std::string("malformed JSON: ") + e.what());
  }
}

std::vector<std::string> string_list(const json& body, const char* key) {
  if (!body.contains(key) || !body[key].is_array()) throw bad_request(std::string("'") + key + "' must be an array");
  std::vector<std::string> out;
  for (const auto& v : body[key]) {
    if (!v.is_string()) throw bad_request(std::string("'") + key + "' must hold strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

}  // namespace

json ServiceError::body() const {
  json out = {{"error", code_}, {"detail", detail_}};
  if (extra_.is_object()) out.update(extra_);
  return out;
}

struct SessionStore::Session {
  std::string id;
  std::string goal;
  std::vector<std::string> criteria;
  std::vector<std::string> alternatives;
  Mode mode = Mode::Crisp;
  std::vector<Cells> cells;  // [0] criteria, then one per criterion
  std::chrono::system_clock::time_point created;
  std::chrono::system_clock::time_point updated;
  std::map<std::string, std::string> cache;
  std::uint64_t revision = 0;
  mutable std::shared_mutex mutex;

  std::size_t order_of(std::size_t matrix) const { return matrix == 0 ? criteria.size() : alternatives.size(); }
  std::string name_of(std::size_t matrix) const { return matrix == 0 ? kCriteriaSelector : criteria[matrix - 1]; }
  static std::size_t total_for(std::size_t n) { return n * (n - 1) / 2; }

  std::size_t matrix_index(const std::string& selector) const {
    if (selector == kCriteriaSelector) return 0;
    for (std::size_t c = 0; c < criteria.size(); ++c)
      if (criteria[c] == selector) return c + 1;
    throw ServiceError(400, "UnknownMatrix", "no matrix named '" + selector + "'");
  }

  std::pair<std::size_t, std::size_t> completion() const {
    std::size_t set = 0;
    std::size_t total = 0;
    for (std::size_t k = 0; k < cells.size(); ++k) {
      set += cells[k].size();
      total += total_for(order_of(k));
    }
    return {set, total};
  }

  std::vector<CellStatus> missing() const {
    std::vector<CellStatus> out;
    for (std::size_t k = 0; k < cells.size(); ++k) {
      const std::size_t n = order_of(k);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (!cells[k].count({i, j})) out.push_back({name_of(k), i, j});
    }
    return out;
  }

  ComparisonMatrix crisp_matrix(std::size_t k) const {
    const std::size_t n = order_of(k);
    RawMatrix raw(n, std::vector<double>(n, 1.0));
    for (const auto& [ij, v] : cells[k]) raw[ij.first][ij.second] = std::get<double>(v);
    return repair_matrix(raw, k == 0 ? criteria : alternatives);
  }

  FuzzyMatrix fuzzy_matrix(std::size_t k) const {
    const std::size_t n = order_of(k);
    RawFuzzyMatrix raw(n, std::vector<Tfn>(n, kUnitTfn));
    for (const auto& [ij, v] : cells[k]) raw[ij.first][ij.second] = std::get<Tfn>(v);
    return repair_fuzzy_matrix(raw, k == 0 ? criteria : alternatives);
  }

  DecisionProblem problem() const {
    const auto gaps = missing();
    if (!gaps.empty()) {
      json list = json::array();
      for (const auto& g : gaps) list.push_back({{"matrix", g.matrix}, {"i", g.i}, {"j", g.j}});
      throw ServiceError(409, "IncompleteJudgments", std::to_string(gaps.size()) + " cells still unset",
                         {{"missing", std::move(list)}});
    }
    if (mode == Mode::Crisp) {
      CrispJudgments j{crisp_matrix(0), {}};
      for (std::size_t c = 0; c < criteria.size(); ++c) j.alternatives.push_back(crisp_matrix(c + 1));
      return DecisionProblem::make_crisp(goal, criteria, alternatives, std::move(j));
    }
    FuzzyJudgments j{fuzzy_matrix(0), {}};
    for (std::size_t c = 0; c < criteria.size(); ++c) j.alternatives.push_back(fuzzy_matrix(c + 1));
    return DecisionProblem::make_fuzzy(goal, criteria, alternatives, std::move(j));
  }
};

SessionStore::SessionStore() : salt_(std::random_device{}()) {}
SessionStore::~SessionStore() = default;

std::shared_ptr<SessionStore::Session> SessionStore::find(const std::string& id) const {
  std::shared_lock lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw ServiceError(404, "UnknownSession", "no session '" + id + "'");
  return it->second;
}

std::string SessionStore::create_session(std::string goal, std::vector<std::string> criteria,
                                         std::vector<std::string> alternatives, Mode mode) {
  check_names(criteria, "criteria");
  check_names(alternatives, "alternatives");
  for (const auto& c : criteria) {
    if (c == kCriteriaSelector) throw bad_request("'criteria' is reserved as a matrix selector");
  }
  if (criteria.size() > kMaxRandomIndexOrder || alternatives.size() > kMaxRandomIndexOrder) {
    throw bad_request("at most 15 criteria and 15 alternatives are supported");
  }
  auto s = std::make_shared<Session>();
  s->goal = std::move(goal);
  s->criteria = std::move(criteria);
  s->alternatives = std::move(alternatives);
  s->mode = mode;
  s->cells.resize(s->criteria.size() + 1);
  s->created = s->updated = std::chrono::system_clock::now();

  std::unique_lock lock(mutex_);
  std::mt19937_64 gen(salt_ ^ (++counter_ * 0x9E3779B97F4A7C15ULL));
  std::string id;
  do {
    std::ostringstream hex;
    hex << std::hex << gen() << counter_;
    id = hex.str();
  } while (sessions_.count(id));
  s->id = id;
  sessions_.emplace(id, std::move(s));
  return id;
}

std::string SessionStore::create_from_problem(const DecisionProblem& problem) {
  const std::string id = create_session(problem.goal(), problem.criteria(), problem.alternatives(), problem.mode());
  auto s = find(id);
  std::unique_lock lock(s->mutex);
  for (std::size_t k = 0; k < s->cells.size(); ++k) {
    const std::size_t n = s->order_of(k);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (problem.mode() == Mode::Crisp) {
          const auto& m = k == 0 ? problem.crisp().criteria : problem.crisp().alternatives[k - 1];
          s->cells[k][{i, j}] = m(i, j);
        } else {
          const auto& m = k == 0 ? problem.fuzzy().criteria : problem.fuzzy().alternatives[k - 1];
          s->cells[k][{i, j}] = m(i, j);
        }
      }
    }
  }
  return id;
}

IncrementalStatus SessionStore::submit_judgment(const std::string& id, const std::string& matrix, std::size_t i,
                                                std::size_t j, const Judgment& value) {
  auto s = find(id);
  std::unique_lock lock(s->mutex);
  const std::size_t k = s->matrix_index(matrix);
  const std::size_t n = s->order_of(k);
  if (i >= n || j >= n) {
    throw ServiceError(422, "CellOutOfRange", "cell (" + std::to_string(i) + "," + std::to_string(j) +
                                                  ") outside an order-" + std::to_string(n) + " matrix");
  }
  if (i >= j) {
    throw ServiceError(422, "LowerTriangleRejected", "only upper-triangle cells (i < j) are entered; (" +
                                                         std::to_string(i) + "," + std::to_string(j) +
                                                         ") is implied");
  }
  if (s->mode == Mode::Crisp) {
    const double* v = std::get_if<double>(&value);
    if (v == nullptr) throw ServiceError(400, "ModeMismatch", "crisp session needs a crisp value");
    if (!(*v >= kMinCrispJudgment - 1e-12 && *v <= kMaxCrispJudgment + 1e-12)) {
      throw ServiceError(422, "CellOutOfRange", "crisp judgments lie in [1/9, 9], got " + format_number(*v));
    }
  } else {
    const Tfn* t = std::get_if<Tfn>(&value);
    if (t == nullptr) throw ServiceError(400, "ModeMismatch", "fuzzy session needs a fuzzy value");
    if (!is_ordered(*t) || !(t->l > 0.0)) {
      throw ServiceError(422, "CellOutOfRange", "fuzzy judgment " + to_string(*t) + " is not a positive l <= m <= u");
    }
  }
  s->cells[k][{i, j}] = value;
  s->updated = std::chrono::system_clock::now();
  ++s->revision;
  s->cache.clear();

  IncrementalStatus status;
  status.matrix = s->name_of(k);
  status.cells_set = s->cells[k].size();
  status.cells_total = Session::total_for(n);
  std::tie(status.session_cells_set, status.session_cells_total) = s->completion();
  if (s->mode == Mode::Crisp && status.matrix_complete()) status.consistency = consistency(s->crisp_matrix(k));
  return status;
}

RankedResult SessionStore::solve_session(const std::string& id, const SolveRequest& request) {
  auto s = find(id);
  DecisionProblem p = [&] {
    std::shared_lock lock(s->mutex);
    return s->problem();
  }();
  try {
    if (p.mode() == Mode::Crisp) {
      if (std::holds_alternative<Attitude>(request)) throw bad_request("attitudes apply to fuzzy sessions");
      const auto* m = std::get_if<WeightMethod>(&request);
      const WeightMethod method = m ? *m : WeightMethod::GeometricMean;
      if (method == WeightMethod::Extent) throw bad_request("extent analysis applies to fuzzy sessions");
      return solve_crisp(p, method);
    }
    if (const auto* a = std::get_if<Attitude>(&request)) return what_if_attitude(p, *a);
    if (const auto* m = std::get_if<WeightMethod>(&request); m && *m != WeightMethod::Extent) {
      throw bad_request("fuzzy sessions solve by extent analysis or by attitude");
    }
    return solve_fuzzy(p);
  } catch (const Error& e) {
    throw from_engine(e);
  }
}

std::string SessionStore::solve_response(const std::string& id, const SolveRequest& request) {
  auto s = find(id);
  const std::string key = solve_key(request);
  std::uint64_t stamp = 0;
  {
    std::shared_lock lock(s->mutex);
    if (auto it = s->cache.find(key); it != s->cache.end()) return it->second;
    stamp = s->revision;
  }
  const std::string text =
      json{{"session", id}, {"request", key}, {"result", to_json(solve_session(id, request))}}.dump();
  std::unique_lock lock(s->mutex);
  // A submit that landed during the solve has already cleared the cache.
  if (s->revision != stamp) return text;
  return s->cache.emplace(key, text).first->second;
}

ComparisonReport SessionStore::compare_session(const std::string& id,
                                               const std::optional<std::pair<Attitude, Attitude>>& attitudes,
                                               const std::optional<std::pair<WeightMethod, WeightMethod>>& methods) {
  const Mode mode = session_mode(id);
  try {
    if (mode == Mode::Crisp) {
      if (attitudes) throw bad_request("attitudes apply to fuzzy sessions");
      const auto pair = methods.value_or(std::pair{WeightMethod::Eigen, WeightMethod::GeometricMean});
      return compare_rankings(solve_session(id, pair.first), solve_session(id, pair.second));
    }
    if (methods) throw bad_request("fuzzy sessions compare attitudes or crisp-vs-fuzzy");
    if (attitudes) {
      return compare_rankings(solve_session(id, attitudes->first), solve_session(id, attitudes->second));
    }
    RankedResult classical = solve_session(id, Attitude::Moderate);
    classical.label = "classical/geomean";
    return compare_rankings(classical, solve_session(id, std::monostate{}));
  } catch (const Error& e) {
    throw from_engine(e);
  }
}

json SessionStore::session_state(const std::string& id) const {
  auto s = find(id);
  std::shared_lock lock(s->mutex);
  json matrices = json::array();
  for (std::size_t k = 0; k < s->cells.size(); ++k) {
    const std::size_t n = s->order_of(k);
    json cells = json::array();
    for (const auto& [ij, v] : s->cells[k]) {
      cells.push_back({{"i", ij.first}, {"j", ij.second}, {"value", judgment_to_json(v)}});
    }
    const std::size_t total = Session::total_for(n);
    json entry = {{"name", s->name_of(k)},
                  {"order", n},
                  {"cells", std::move(cells)},
                  {"cells_set", s->cells[k].size()},
                  {"cells_total", total},
                  {"complete", s->cells[k].size() == total}};
    if (s->mode == Mode::Crisp && s->cells[k].size() == total) {
      const auto report = consistency(s->crisp_matrix(k));
      entry["consistency"] = fahp::to_json(report);
      entry["consistency"]["warning"] = !report.consistent;
    }
    matrices.push_back(std::move(entry));
  }
  const auto [set, total] = s->completion();
  return {{"id", s->id},
          {"goal", s->goal},
          {"mode", std::string(to_string(s->mode))},
          {"criteria", s->criteria},
          {"alternatives", s->alternatives},
          {"matrices", std::move(matrices)},
          {"cells_set", set},
          {"cells_total", total},
          {"completion", round4(total == 0 ? 1.0 : static_cast<double>(set) / static_cast<double>(total))},
          {"complete", set == total},
          {"created", iso_time(s->created)},
          {"updated", iso_time(s->updated)},
          {"cached_results", s->cache.size()}};
}

std::string SessionStore::export_problem(const std::string& id) const {
  auto s = find(id);
  std::shared_lock lock(s->mutex);
  return problem_to_json(s->problem());
}

std::vector<CellStatus> SessionStore::missing_cells(const std::string& id) const {
  auto s = find(id);
  std::shared_lock lock(s->mutex);
  return s->missing();
}

Mode SessionStore::session_mode(const std::string& id) const {
  auto s = find(id);
  std::shared_lock lock(s->mutex);
  return s->mode;
}

std::size_t SessionStore::session_count() const {
  std::shared_lock lock(mutex_);
  return sessions_.size();
}

json to_json(const IncrementalStatus& status) {
  json out = {{"matrix", status.matrix},
              {"cells_set", status.cells_set},
              {"cells_total", status.cells_total},
              {"matrix_complete", status.matrix_complete()},
              {"session_cells_set", status.session_cells_set},
              {"session_cells_total", status.session_cells_total},
              {"completion", round4(status.session_cells_total == 0
                                        ? 1.0
                                        : static_cast<double>(status.session_cells_set) /
                                              static_cast<double>(status.session_cells_total))}};
  if (status.consistency) {
    out["consistency"] = fahp::to_json(*status.consistency);
    out["consistency"]["warning"] = !status.consistency->consistent;
  }
  return out;
}

template <typename Fn>
Response Api::guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const ServiceError& e) {
    return {e.status(), e.body().dump()};
  } catch (const Error& e) {
    const ServiceError mapped = from_engine(e);
    return {mapped.status(), mapped.body().dump()};
  } catch (const json::exception& e) {
    return {400, bad_request(e.what()).body().dump()};
  }
}

Response Api::create(const std::string& body) {
  return guarded([&] {
    const json req = parse_body(body);
    const std::string goal = req.contains("goal") && req["goal"].is_string() ? req["goal"].get<std::string>() : "";
    if (!req.contains("mode") || !req["mode"].is_string()) throw bad_request("'mode' must be \"crisp\" or \"fuzzy\"");
    const std::string mode_text = req["mode"].get<std::string>();
    if (mode_text != "crisp" && mode_text != "fuzzy") throw bad_request("'mode' must be \"crisp\" or \"fuzzy\"");
    const std::string id = store_.create_session(goal, string_list(req, "criteria"), string_list(req, "alternatives"),
                                                 parse_mode(mode_text));
    return Response{201, store_.session_state(id).dump()};
  });
}

Response Api::get(const std::string& id) {
  return guarded([&] { return Response{200, store_.session_state(id).dump()}; });
}

Response Api::submit(const std::string& id, const std::string& body) {
  return guarded([&] {
    const json req = parse_body(body);
    const Mode mode = store_.session_mode(id);
    if (!req.contains("matrix") || !req["matrix"].is_string()) throw bad_request("'matrix' must be a string");
    if (!req.contains("i") || !req["i"].is_number_integer() || !req.contains("j") || !req["j"].is_number_integer()) {
      throw bad_request("'i' and 'j' must be integers");
    }
    if (!req.contains("value")) throw bad_request("missing 'value'");
    const auto i = req["i"].get<long long>();
    const auto j = req["j"].get<long long>();
    if (i < 0 || j < 0) throw ServiceError(422, "CellOutOfRange", "cell indices must be non-negative");
    const Judgment value = parse_judgment(req["value"], mode);
    const auto status = store_.submit_judgment(id, req["matrix"].get<std::string>(), static_cast<std::size_t>(i),
                                               static_cast<std::size_t>(j), value);
    return Response{200, to_json(status).dump()};
  });
}

Response Api::solve(const std::string& id, const std::string& body) {
  return guarded([&] {
    const json req = parse_body(body);
    SolveRequest request;
    if (req.contains("method") && req.contains("attitude")) throw bad_request("give either 'method' or 'attitude'");
    if (req.contains("method")) {
      if (!req["method"].is_string()) throw bad_request("'method' must be a string");
      request = parse_method(req["method"].get<std::string>());
    } else if (req.contains("attitude")) {
      if (!req["attitude"].is_string()) throw bad_request("'attitude' must be a string");
      request = attitude_or_throw(req["attitude"].get<std::string>());
    }
    return Response{200, store_.solve_response(id, request)};
  });
}

Response Api::compare(const std::string& id, const std::string& body) {
  return guarded([&] {
    const json req = parse_body(body);
    std::optional<std::pair<Attitude, Attitude>> attitudes;
    std::optional<std::pair<WeightMethod, WeightMethod>> methods;
    if (req.contains("attitudes")) {
      const auto list = string_list(req, "attitudes");
      if (list.size() != 2) throw bad_request("'attitudes' needs exactly two entries");
      attitudes = std::pair{attitude_or_throw(list[0]), attitude_or_throw(list[1])};
    }
    if (req.contains("methods")) {
      const auto list = string_list(req, "methods");
      if (list.size() != 2) throw bad_request("'methods' needs exactly two entries");
      methods = std::pair{parse_method(list[0]), parse_method(list[1])};
    }
    const auto report = store_.compare_session(id, attitudes, methods);
    return Response{200, json{{"session", id}, {"comparison", fahp::to_json(report)}}.dump()};
  });
}

Response Api::document(const std::string& id) {
  return guarded([&] { return Response{200, store_.export_problem(id)}; });
}

Response Api::paper_case(const std::string& mode) {
  return guarded([&] {
    std::string_view fixture;
    if (mode.empty() || mode == "crisp") {
      fixture = kCrispFixture;
    } else if (mode == "fuzzy") {
      fixture = kFuzzyFixture;
    } else {
      throw bad_request("mode must be crisp or fuzzy");
    }
    const auto loaded = load_problem_text(paper_case_fixture(fixture), Strictness::Lenient);
    const std::string id = store_.create_from_problem(loaded.problem);
    return Response{201, store_.session_state(id).dump()};
  });
}

void mount(httplib::Server& server, Api& api) {
  constexpr const char* kJson = "application/json";
  auto reply = [kJson](httplib::Response& res, const Response& r) {
    res.status = r.status;
    res.set_content(r.body, kJson);
  };
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Headers", "Content-Type"},
                              {"Access-Control-Allow-Methods", "GET, POST, PUT, OPTIONS"}});
  server.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  server.Post("/sessions", [&api, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, api.create(req.body));
  });
  server.Get(R"(/sessions/([A-Za-z0-9]+))", [&api, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, api.get(req.matches[1]));
  });
  server.Put(R"(/sessions/([A-Za-z0-9]+)/judgments)",
             [&api, reply](const httplib::Request& req, httplib::Response& res) {
               reply(res, api.submit(req.matches[1], req.body));
             });
  server.Post(R"(/sessions/([A-Za-z0-9]+)/solve)", [&api, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, api.solve(req.matches[1], req.body));
  });
  server.Post(R"(/sessions/([A-Za-z0-9]+)/compare)",
              [&api, reply](const httplib::Request& req, httplib::Response& res) {
                reply(res, api.compare(req.matches[1], req.body));
              });
  server.Get(R"(/sessions/([A-Za-z0-9]+)/document)",
             [&api, reply](const httplib::Request& req, httplib::Response& res) {
               reply(res, api.document(req.matches[1]));
             });
  server.Get("/fixtures/paper-case", [&api, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, api.paper_case(req.has_param("mode") ? req.get_param_value("mode") : ""));
  });
  server.set_error_handler([kJson](const httplib::Request&, httplib::Response& res) {
    if (res.body.empty()) {
      res.set_content(json{{"error", "NotFound"}, {"detail", "no such endpoint"}}.dump(), kJson);
    }
  });
}

bool serve(const std::string& host, int port) {
  SessionStore store;
  Api api(store);
  httplib::Server server;
  mount(server, api);
  return server.listen(host, port);
}

}  // namespace fahp::service
