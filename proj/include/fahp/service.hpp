#pragma once

#include <chrono>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "fahp/hierarchy.hpp"

namespace httplib {
class Server;
}

namespace fahp::service {

// Failure surfaced to HTTP clients as {"error": code, "detail": ...}.
class ServiceError : public std::runtime_error {
 public:
  ServiceError(int status, std::string code, std::string detail, nlohmann::json extra = nullptr)
      : std::runtime_error(code + ": " + detail),
        status_(status),
        code_(std::move(code)),
        detail_(std::move(detail)),
        extra_(std::move(extra)) {}

  int status() const noexcept { return status_; }
  const std::string& code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }
  nlohmann::json body() const;

 private:
  int status_;
  std::string code_;
  std::string detail_;
  nlohmann::json extra_;
};

inline constexpr double kMinCrispJudgment = 1.0 / 9.0;
inline constexpr double kMaxCrispJudgment = 9.0;

struct CellStatus {
  std::string matrix;
  std::size_t i = 0;
  std::size_t j = 0;
};

struct IncrementalStatus {
  std::string matrix;
  std::size_t cells_set = 0;
  std::size_t cells_total = 0;
  std::size_t session_cells_set = 0;
  std::size_t session_cells_total = 0;
  std::optional<ConsistencyReport> consistency;  // crisp matrices, once complete

  bool matrix_complete() const noexcept { return cells_set == cells_total; }
};

// Either a crisp weight method or a defuzzification attitude; monostate is
// the mode's default (geometric mean for crisp, extent analysis for fuzzy).
using SolveRequest = std::variant<std::monostate, WeightMethod, Attitude>;

// In-memory judgment-elicitation sessions. Safe for concurrent use; writes to
// one session are serialized, different sessions never share state.
class SessionStore {
 public:
  SessionStore();
  ~SessionStore();
  SessionStore(const SessionStore&) = delete;
  SessionStore& operator=(const SessionStore&) = delete;

  std::string create_session(std::string goal, std::vector<std::string> criteria,
                             std::vector<std::string> alternatives, Mode mode);
  // New session pre-filled with every upper-triangle cell of `problem`.
  std::string create_from_problem(const DecisionProblem& problem);

  // `matrix` is "criteria" or a criterion name; only i < j is accepted.
  IncrementalStatus submit_judgment(const std::string& id, const std::string& matrix, std::size_t i, std::size_t j,
                                    const Judgment& value);

  RankedResult solve_session(const std::string& id, const SolveRequest& request);
  // Serialized solve response; repeated calls without edits return the
  // cached text unchanged.
  std::string solve_response(const std::string& id, const SolveRequest& request);

  // Crisp sessions compare two weight methods, fuzzy sessions compare the
  // moderate crisp reading against extent analysis, or two attitudes.
  ComparisonReport compare_session(const std::string& id, const std::optional<std::pair<Attitude, Attitude>>& attitudes,
                                   const std::optional<std::pair<WeightMethod, WeightMethod>>& methods);

  nlohmann::json session_state(const std::string& id) const;
  std::string export_problem(const std::string& id) const;
  std::vector<CellStatus> missing_cells(const std::string& id) const;
  Mode session_mode(const std::string& id) const;
  std::size_t session_count() const;

 private:
  struct Session;
  std::shared_ptr<Session> find(const std::string& id) const;

  mutable std::shared_mutex mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t counter_ = 0;
  std::uint64_t salt_ = 0;
};

nlohmann::json to_json(const IncrementalStatus& status);

// JSON request handlers shared by the HTTP routes and the tests.
struct Response {
  int status = 200;
  std::string body;
};

class Api {
 public:
  explicit Api(SessionStore& store) : store_(store) {}

  Response create(const std::string& body);
  Response get(const std::string& id);
  Response submit(const std::string& id, const std::string& body);
  Response solve(const std::string& id, const std::string& body);
  Response compare(const std::string& id, const std::string& body);
  Response document(const std::string& id);
  Response paper_case(const std::string& mode);

 private:
  template <typename Fn>
  Response guarded(Fn&& fn);

  SessionStore& store_;
};

// Registers every endpoint on `server`.
void mount(httplib::Server& server, Api& api);

// Blocking; returns when the server stops.
bool serve(const std::string& host, int port);

}  // namespace fahp::service
