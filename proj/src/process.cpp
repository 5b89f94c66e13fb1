#include "verigen/process.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cerrno>
#include <cstdlib>
#include <cstring>

#include "verigen/error.hpp"

namespace verigen {

namespace fs = std::filesystem;

std::optional<fs::path> find_executable(const std::string& program) {
  if (program.empty()) return std::nullopt;
  if (program.find('/') != std::string::npos) {
    if (::access(program.c_str(), X_OK) == 0) return fs::path(program);
    return std::nullopt;
  }
  const char* path = std::getenv("PATH");
  std::string_view rest = path ? path : "/usr/bin:/bin";
  while (true) {
    auto colon = rest.find(':');
    std::string dir(rest.substr(0, colon));
    if (dir.empty()) dir = ".";
    fs::path candidate = fs::path(dir) / program;
    std::error_code ec;
    if (fs::is_regular_file(candidate, ec) && ::access(candidate.c_str(), X_OK) == 0)
      return candidate;
    if (colon == std::string_view::npos) break;
    rest.remove_prefix(colon + 1);
  }
  return std::nullopt;
}

namespace {

struct Pipe {
  int fds[2] = {-1, -1};
  Pipe() {
    if (::pipe2(fds, O_CLOEXEC) != 0)
      throw EnvironmentError(std::string("pipe failed: ") + std::strerror(errno));
  }
  ~Pipe() {
    close_read();
    close_write();
  }
  Pipe(const Pipe&) = delete;
  Pipe& operator=(const Pipe&) = delete;
  void close_read() {
    if (fds[0] >= 0) ::close(fds[0]);
    fds[0] = -1;
  }
  void close_write() {
    if (fds[1] >= 0) ::close(fds[1]);
    fds[1] = -1;
  }
};

}  // namespace

ProcessResult run_process(const std::vector<std::string>& argv,
                          const ProcessOptions& opts) {
  if (argv.empty()) throw EnvironmentError("run_process: empty argv");
  auto exe = find_executable(argv[0]);
  if (!exe) throw EnvironmentError("executable not found: " + argv[0]);

  Pipe in, out, err;
  Pipe status;  // reports exec failure errno back to the parent

  std::vector<char*> cargv;
  cargv.reserve(argv.size() + 1);
  for (const auto& a : argv) cargv.push_back(const_cast<char*>(a.c_str()));
  cargv.push_back(nullptr);
  std::string exe_str = exe->string();
  std::string cwd_str = opts.cwd.empty() ? std::string() : opts.cwd.string();

  auto start = std::chrono::steady_clock::now();
  pid_t pid = ::fork();
  if (pid < 0) throw EnvironmentError(std::string("fork failed: ") + std::strerror(errno));
  if (pid == 0) {
    ::setpgid(0, 0);
    ::dup2(in.fds[0], STDIN_FILENO);
    ::dup2(out.fds[1], STDOUT_FILENO);
    ::dup2(err.fds[1], STDERR_FILENO);
    if (!cwd_str.empty() && ::chdir(cwd_str.c_str()) != 0) {
      int e = errno;
      (void)!::write(status.fds[1], &e, sizeof e);
      ::_exit(127);
    }
    ::execv(exe_str.c_str(), cargv.data());
    int e = errno;
    (void)!::write(status.fds[1], &e, sizeof e);
    ::_exit(127);
  }
  ::setpgid(pid, pid);

  in.close_read();
  out.close_write();
  err.close_write();
  status.close_write();

  int child_errno = 0;
  if (::read(status.fds[0], &child_errno, sizeof child_errno) == sizeof child_errno) {
    int st;
    ::waitpid(pid, &st, 0);
    throw EnvironmentError("cannot execute " + exe_str + ": " + std::strerror(child_errno));
  }

  ::signal(SIGPIPE, SIG_IGN);
  ProcessResult result;
  std::size_t written = 0;
  if (opts.stdin_data.empty()) in.close_write();
  else ::fcntl(in.fds[1], F_SETFL, O_NONBLOCK);

  bool out_open = true, err_open = true;
  std::array<char, 8192> buf{};
  while (out_open || err_open || in.fds[1] >= 0) {
    std::vector<pollfd> pfds;
    if (out_open) pfds.push_back({out.fds[0], POLLIN, 0});
    if (err_open) pfds.push_back({err.fds[0], POLLIN, 0});
    if (in.fds[1] >= 0) pfds.push_back({in.fds[1], POLLOUT, 0});

    int wait_ms = -1;
    if (opts.timeout) {
      auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
          std::chrono::steady_clock::now() - start);
      auto left = *opts.timeout - elapsed;
      if (left.count() <= 0) {
        result.timed_out = true;
        break;
      }
      wait_ms = static_cast<int>(left.count());
    }
    int rc = ::poll(pfds.data(), pfds.size(), wait_ms);
    if (rc < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (rc == 0) continue;
    for (auto& p : pfds) {
      if (p.revents == 0) continue;
      if (p.fd == in.fds[1]) {
        if (p.revents & (POLLERR | POLLHUP)) {
          in.close_write();
          continue;
        }
        auto n = ::write(p.fd, opts.stdin_data.data() + written,
                         opts.stdin_data.size() - written);
        if (n > 0) written += static_cast<std::size_t>(n);
        if (n < 0 && errno != EAGAIN) in.close_write();
        if (written >= opts.stdin_data.size()) in.close_write();
        continue;
      }
      auto n = ::read(p.fd, buf.data(), buf.size());
      if (n > 0) {
        (p.fd == out.fds[0] ? result.out : result.err).append(buf.data(), static_cast<std::size_t>(n));
      } else if (n == 0 || (errno != EAGAIN && errno != EINTR)) {
        if (p.fd == out.fds[0]) out_open = false;
        else err_open = false;
      }
    }
  }

  int st = 0;
  if (result.timed_out) {
    ::kill(-pid, SIGKILL);
    ::waitpid(pid, &st, 0);
  } else {
    while (::waitpid(pid, &st, 0) < 0 && errno == EINTR) {
    }
    if (WIFSIGNALED(st)) {
      result.signaled = true;
      result.signal = WTERMSIG(st);
    } else if (WIFEXITED(st)) {
      result.exit_code = WEXITSTATUS(st);
    }
  }
  result.duration = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);
  return result;
}

}  // namespace verigen
