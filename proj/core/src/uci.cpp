#include "evotune/uci.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cstring>
#include <sstream>

namespace evotune {

namespace {

int64_t now_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

}  // namespace

UciClient::UciClient(const std::string& command, int timeout_ms)
    : command_(command), timeout_ms_(timeout_ms) {
  // A dying engine must surface as EPIPE (-> BackendError), not SIGPIPE.
  signal(SIGPIPE, SIG_IGN);

  int to_pipe[2], from_pipe[2];
  if (pipe(to_pipe) != 0)
    throw BackendError("uci: pipe() failed: " + std::string(std::strerror(errno)));
  if (pipe(from_pipe) != 0) {
    const int err = errno;
    close(to_pipe[0]);
    close(to_pipe[1]);
    throw BackendError("uci: pipe() failed: " + std::string(std::strerror(err)));
  }

  const int pid = fork();
  if (pid < 0) {
    const int err = errno;
    close(to_pipe[0]);
    close(to_pipe[1]);
    close(from_pipe[0]);
    close(from_pipe[1]);
    throw BackendError("uci: fork() failed: " + std::string(std::strerror(err)));
  }
  if (pid == 0) {
    dup2(to_pipe[0], STDIN_FILENO);
    dup2(from_pipe[1], STDOUT_FILENO);
    close(to_pipe[0]);
    close(to_pipe[1]);
    close(from_pipe[0]);
    close(from_pipe[1]);
    execl("/bin/sh", "sh", "-c", command_.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  child_pid_ = pid;
  to_child_ = to_pipe[1];
  from_child_ = from_pipe[0];
  close(to_pipe[0]);
  close(from_pipe[1]);

  try {
    send_line("uci");
    const int64_t deadline = now_ms() + timeout_ms_;
    for (;;) {
      const std::string line = read_line(static_cast<int>(deadline - now_ms()));
      if (line == "uciok") break;
    }
    send_line("isready");
    const int64_t deadline2 = now_ms() + timeout_ms_;
    for (;;) {
      const std::string line = read_line(static_cast<int>(deadline2 - now_ms()));
      if (line == "readyok") break;
    }
  } catch (...) {
    // The destructor will not run for a throwing constructor.
    close(to_child_);
    close(from_child_);
    kill(child_pid_, SIGKILL);
    int status = 0;
    waitpid(child_pid_, &status, 0);
    throw;
  }
}

UciClient::~UciClient() {
  if (to_child_ >= 0) {
    // Best effort; the engine may already be gone.
    const char quit[] = "quit\n";
    [[maybe_unused]] ssize_t n = write(to_child_, quit, sizeof quit - 1);
    close(to_child_);
  }
  if (from_child_ >= 0) close(from_child_);
  if (child_pid_ > 0) {
    int status = 0;
    if (waitpid(child_pid_, &status, WNOHANG) == 0) {
      kill(child_pid_, SIGKILL);
      waitpid(child_pid_, &status, 0);
    }
  }
}

void UciClient::send_line(const std::string& line) {
  const std::string out = line + "\n";
  std::size_t written = 0;
  while (written < out.size()) {
    const ssize_t n = write(to_child_, out.data() + written, out.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw BackendError("uci: engine '" + command_ + "' stopped accepting input (" +
                         std::strerror(errno) + ")");
    }
    written += static_cast<std::size_t>(n);
  }
}

std::string UciClient::read_line(int deadline_ms) {
  const int64_t deadline = now_ms() + std::max(deadline_ms, 0);
  for (;;) {
    const auto nl = buffer_.find('\n');
    if (nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return line;
    }
    const int64_t remaining = deadline - now_ms();
    if (remaining <= 0)
      throw BackendError("uci: engine '" + command_ + "' timed out after " +
                         std::to_string(timeout_ms_) + " ms");
    struct pollfd pfd{from_child_, POLLIN, 0};
    const int ready = poll(&pfd, 1, static_cast<int>(remaining));
    if (ready < 0) {
      if (errno == EINTR) continue;
      throw BackendError("uci: poll() failed: " + std::string(std::strerror(errno)));
    }
    if (ready == 0) continue;  // loop re-checks the deadline
    char chunk[4096];
    const ssize_t n = read(from_child_, chunk, sizeof chunk);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw BackendError("uci: read() failed: " + std::string(std::strerror(errno)));
    }
    if (n == 0) throw BackendError("uci: engine '" + command_ + "' exited unexpectedly");
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

int UciClient::score(const Position& p, int depth) {
  send_line("position fen " + p.fen());
  send_line("go depth " + std::to_string(depth));

  const int64_t deadline = now_ms() + timeout_ms_;
  bool have_score = false;
  int last_score = 0;
  for (;;) {
    const std::string line = read_line(static_cast<int>(deadline - now_ms()));
    std::istringstream in(line);
    std::string token;
    in >> token;
    if (token == "bestmove") {
      if (!have_score)
        throw BackendError("uci: engine '" + command_ + "' sent bestmove without any score");
      return last_score;
    }
    if (token != "info") continue;
    while (in >> token) {
      if (token != "score") continue;
      std::string kind;
      long long value;
      if (!(in >> kind >> value))
        throw BackendError("uci: malformed score in info line '" + line + "'");
      if (kind == "cp") {
        last_score = static_cast<int>(std::clamp<long long>(value, -kScoreClamp, kScoreClamp));
        have_score = true;
      } else if (kind == "mate") {
        const long long plies = value < 0 ? -value : value;
        const int mate = static_cast<int>(std::clamp<long long>(30000 - plies, 0, kScoreClamp));
        last_score = value >= 0 ? mate : -mate;
        have_score = true;
      } else {
        throw BackendError("uci: unknown score kind '" + kind + "' in line '" + line + "'");
      }
      break;
    }
  }
}

int UciExpert::score(const Position& p) { return client_.score(p, depth_); }

}  // namespace evotune
