#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "crncex/bmc_encode.hpp"
#include "crncex/formula.hpp"
#include "crncex/witness.hpp"

namespace crncex {

/// SMT-LIB 2 term for a formula (QF_LIA).
std::string to_smtlib_term(const Formula& f);

/// "(assert <term>)". Deterministic for a given formula.
std::string emit_smtlib(const Formula& f);

/// Satisfying assignment, keyed by variable.
class SolverModel {
 public:
  SolverModel() = default;
  explicit SolverModel(std::map<Var, std::int64_t> values) : values_(std::move(values)) {}

  bool contains(const Var& v) const { return values_.contains(v); }
  /// Throws DecodeError for variables missing from the model.
  std::int64_t value(const Var& v) const;
  const std::map<Var, std::int64_t>& values() const { return values_; }

 private:
  std::map<Var, std::int64_t> values_;
};

struct Unsat {};
using CheckResult = std::variant<SolverModel, Unsat>;

inline bool is_sat(const CheckResult& r) { return std::holds_alternative<SolverModel>(r); }

/// A child solver process spoken to in SMT-LIB 2 over pipes. Strictly request/response; not
/// thread-safe. The command is run through /bin/sh, e.g. "z3 -in".
class SolverSession {
 public:
  explicit SolverSession(std::string command,
                         std::chrono::milliseconds timeout = std::chrono::seconds(300));
  ~SolverSession();
  SolverSession(const SolverSession&) = delete;
  SolverSession& operator=(const SolverSession&) = delete;

  const std::string& command() const { return command_; }

  /// Timeout applied to each check; a deadline further caps it for budgeted runs.
  void set_timeout(std::chrono::milliseconds timeout) { timeout_ = timeout; }
  void set_deadline(std::optional<std::chrono::steady_clock::time_point> deadline) {
    deadline_ = deadline;
  }

  /// Drops all assertions and declarations.
  void reset();
  void push();
  void pop();
  std::size_t depth() const { return frames_.size(); }

  /// Declares any variables of `f` not yet declared, then asserts it at the current level.
  void assert_formula(const Formula& f);

  /// Checks the current assertions. On sat the model covers every declared variable.
  CheckResult check();
  /// push; assert f; check; pop.
  CheckResult check_sat(const Formula& f);

  std::size_t checks_performed() const { return checks_; }

 private:
  void start();
  void stop();
  void send(const std::string& text);
  std::string read_line();
  std::string read_sexpr();
  std::string drain_stderr();
  [[noreturn]] void fail(const std::string& message);
  std::chrono::steady_clock::time_point effective_deadline() const;
  void declare(const std::set<Var>& vars);

  std::string command_;
  std::chrono::milliseconds timeout_;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
  int pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  int err_child_ = -1;
  std::string out_buffer_;
  std::string err_buffer_;
  std::set<Var> declared_;
  // Variables declared inside each push frame; popped frames forget their declarations.
  std::vector<std::set<Var>> frames_;
  std::size_t checks_ = 0;
};

/// Convenience wrapper matching the free-function form.
inline CheckResult check_sat(SolverSession& session, const Formula& f) {
  return session.check_sat(f);
}

/// Reads the states v[0..k] from the model and recovers each step's reaction (lowest index on
/// ties). Throws EncodingError if some step is not a reaction firing.
Witness extract_witness(const SolverModel& model, const UnrollContext& ctx);

/// Parses a (get-value ...) response into a model. Throws DecodeError on malformed input.
SolverModel parse_model(const std::string& response);

}  // namespace crncex
