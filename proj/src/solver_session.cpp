#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include <fmt/format.h>

#include "crncex/errors.hpp"
#include "crncex/smt.hpp"

extern char** environ;

namespace crncex {

namespace {

constexpr const char* kPrelude =
    "(set-option :print-success false)\n"
    "(set-option :produce-models true)\n"
    "(set-logic QF_LIA)\n";

void close_fd(int& fd) {
  if (fd >= 0) ::close(fd);
  fd = -1;
}

}  // namespace

SolverSession::SolverSession(std::string command, std::chrono::milliseconds timeout)
    : command_(std::move(command)), timeout_(timeout) {
  ::signal(SIGPIPE, SIG_IGN);
  start();
}

SolverSession::~SolverSession() { stop(); }

void SolverSession::start() {
  int in_pipe[2];
  int out_pipe[2];
  int err_pipe[2];
  if (::pipe(in_pipe) != 0 || ::pipe(out_pipe) != 0 || ::pipe(err_pipe) != 0) {
    throw SolverError(fmt::format("pipe: {}", std::strerror(errno)));
  }
  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_adddup2(&actions, in_pipe[0], STDIN_FILENO);
  posix_spawn_file_actions_adddup2(&actions, out_pipe[1], STDOUT_FILENO);
  posix_spawn_file_actions_adddup2(&actions, err_pipe[1], STDERR_FILENO);
  for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1], err_pipe[0], err_pipe[1]}) {
    posix_spawn_file_actions_addclose(&actions, fd);
  }
  const std::string script = "exec " + command_;
  const char* argv[] = {"/bin/sh", "-c", script.c_str(), nullptr};
  pid_t pid = -1;
  const int rc = ::posix_spawn(&pid, "/bin/sh", &actions, nullptr, const_cast<char**>(argv), environ);
  posix_spawn_file_actions_destroy(&actions);
  ::close(in_pipe[0]);
  ::close(out_pipe[1]);
  ::close(err_pipe[1]);
  if (rc != 0) {
    ::close(in_pipe[1]);
    ::close(out_pipe[0]);
    ::close(err_pipe[0]);
    throw SolverError(fmt::format("cannot start solver '{}': {}", command_, std::strerror(rc)));
  }
  pid_ = pid;
  to_child_ = in_pipe[1];
  from_child_ = out_pipe[0];
  err_child_ = err_pipe[0];
  ::fcntl(from_child_, F_SETFD, FD_CLOEXEC);
  ::fcntl(to_child_, F_SETFD, FD_CLOEXEC);
  ::fcntl(err_child_, F_SETFD, FD_CLOEXEC);
  ::fcntl(err_child_, F_SETFL, ::fcntl(err_child_, F_GETFL) | O_NONBLOCK);
  out_buffer_.clear();
  err_buffer_.clear();
  declared_.clear();
  frames_.clear();

  // Handshake so a missing binary is reported here rather than at the first check.
  send(std::string(kPrelude) + "(echo \"ready\")\n");
  const std::string line = read_line();
  if (line != "ready" && line != "\"ready\"") {
    fail(fmt::format("solver '{}' did not start correctly (got '{}')", command_, line));
  }
}

void SolverSession::stop() {
  close_fd(to_child_);
  close_fd(from_child_);
  close_fd(err_child_);
  if (pid_ > 0) {
    ::kill(pid_, SIGKILL);
    int status = 0;
    ::waitpid(pid_, &status, 0);
    pid_ = -1;
  }
}

void SolverSession::fail(const std::string& message) {
  std::string err = drain_stderr();
  stop();
  throw SolverError(message, std::move(err));
}

std::string SolverSession::drain_stderr() {
  if (err_child_ >= 0) {
    char buf[4096];
    while (true) {
      const ssize_t n = ::read(err_child_, buf, sizeof buf);
      if (n <= 0) break;
      err_buffer_.append(buf, static_cast<std::size_t>(n));
    }
  }
  return err_buffer_;
}

std::chrono::steady_clock::time_point SolverSession::effective_deadline() const {
  auto d = std::chrono::steady_clock::now() + timeout_;
  if (deadline_ && *deadline_ < d) d = *deadline_;
  return d;
}

void SolverSession::send(const std::string& text) {
  if (pid_ < 0) start();
  std::size_t written = 0;
  while (written < text.size()) {
    const ssize_t n = ::write(to_child_, text.data() + written, text.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      fail(fmt::format("solver '{}' closed its input: {}", command_, std::strerror(errno)));
    }
    written += static_cast<std::size_t>(n);
  }
}

std::string SolverSession::read_line() {
  const auto deadline = effective_deadline();
  while (true) {
    const auto nl = out_buffer_.find('\n');
    if (nl != std::string::npos) {
      std::string line = out_buffer_.substr(0, nl);
      out_buffer_.erase(0, nl + 1);
      while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
      if (line.empty()) continue;
      return line;
    }
    const auto now = std::chrono::steady_clock::now();
    if (now >= deadline) {
      std::string err = drain_stderr();
      stop();
      throw SolverTimeout(fmt::format("solver '{}' timed out", command_), std::move(err));
    }
    const auto wait = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now);
    pollfd fds[2] = {{from_child_, POLLIN, 0}, {err_child_, POLLIN, 0}};
    const int rc = ::poll(fds, 2, static_cast<int>(std::min<long long>(wait.count() + 1, 1000)));
    if (rc < 0) {
      if (errno == EINTR) continue;
      fail(fmt::format("poll: {}", std::strerror(errno)));
    }
    if (fds[1].revents & POLLIN) drain_stderr();
    if (fds[0].revents & (POLLIN | POLLHUP)) {
      char buf[65536];
      const ssize_t n = ::read(from_child_, buf, sizeof buf);
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) fail(fmt::format("solver '{}' exited unexpectedly", command_));
      out_buffer_.append(buf, static_cast<std::size_t>(n));
    }
  }
}

std::string SolverSession::read_sexpr() {
  std::string text;
  int balance = 0;
  bool started = false;
  while (!started || balance > 0) {
    const std::string line = read_line();
    for (char c : line) {
      if (c == '(') {
        ++balance;
        started = true;
      } else if (c == ')') {
        --balance;
      }
    }
    if (!started) fail(fmt::format("expected an s-expression from the solver, got '{}'", line));
    text += line;
    text += '\n';
  }
  return text;
}

void SolverSession::declare(const std::set<Var>& vars) {
  std::string decls;
  for (const Var& v : vars) {
    if (declared_.insert(v).second) {
      decls += fmt::format("(declare-const {} Int)\n", v.name());
      if (!frames_.empty()) frames_.back().insert(v);
    }
  }
  if (!decls.empty()) send(decls);
}

void SolverSession::reset() {
  send(std::string("(reset)\n") + kPrelude);
  declared_.clear();
  frames_.clear();
}

void SolverSession::push() {
  send("(push 1)\n");
  frames_.emplace_back();
}

void SolverSession::pop() {
  if (frames_.empty()) throw ContractError("pop without matching push");
  send("(pop 1)\n");
  for (const Var& v : frames_.back()) declared_.erase(v);
  frames_.pop_back();
}

void SolverSession::assert_formula(const Formula& f) {
  std::set<Var> vars;
  f.collect_vars(vars);
  declare(vars);
  send(emit_smtlib(f) + "\n");
}

CheckResult SolverSession::check() {
  ++checks_;
  send("(check-sat)\n");
  std::string line = read_line();
  if (line.rfind("(error", 0) == 0) {
    fail(fmt::format("solver reported {}", line));
  }
  if (line == "unsat") return Unsat{};
  if (line != "sat") {
    if (line == "unknown") {
      fail(fmt::format("solver '{}' answered unknown", command_));
    }
    fail(fmt::format("unexpected solver response '{}'", line));
  }
  if (declared_.empty()) return SolverModel{};
  std::string query = "(get-value (";
  for (const Var& v : declared_) {
    query += v.name();
    query += ' ';
  }
  query += "))\n";
  send(query);
  const std::string response = read_sexpr();
  if (response.rfind("(error", 0) == 0) fail(fmt::format("solver reported {}", response));
  return parse_model(response);
}

CheckResult SolverSession::check_sat(const Formula& f) {
  push();
  assert_formula(f);
  CheckResult result = check();
  pop();
  return result;
}

}  // namespace crncex
