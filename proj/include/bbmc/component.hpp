// Copyright 2026 The bbmc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BBMC_COMPONENT_HPP
#define BBMC_COMPONENT_HPP

#include <poll.h>
#include <signal.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <csignal>
#include <cstdint>
#include <cstring>
#include <string>
#include <utility>

#include "bbmc/errors.hpp"
#include "bbmc/mealy.hpp"

namespace bbmc {

/// Raw access to an implementation of X. Symbols are plain tokens; the
/// session layer above maps them onto the host alphabets.
class ComponentBackend {
 public:
  virtual ~ComponentBackend() = default;

  virtual void reset() = 0;
  virtual std::string step(const std::string& input) = 0;
};

/// Runs a reference Mealy machine in-process.
class ReferenceBackend final : public ComponentBackend {
 public:
  explicit ReferenceBackend(MealyMachine machine)
      : machine_(std::move(machine)), state_(machine_.initial()) {}

  void reset() override { state_ = machine_.initial(); }

  std::string step(const std::string& input) override {
    auto a = machine_.inputs().find(input);
    if (!a) throw AdapterFailure("reference component has no input '" + input + "'");
    const auto& r = machine_.step(state_, *a);
    state_ = r.next;
    return machine_.outputs().name(r.output);
  }

  const MealyMachine& machine() const noexcept { return machine_; }

 private:
  MealyMachine machine_;
  std::uint32_t state_;
};

/// Talks to a child process over its standard streams:
///
///   engine -> component:  RESET | IN <symbol>
///   component -> engine:  OK    | OUT <symbol>
///
/// One request is outstanding at a time, so a blocking write followed by a
/// polled read cannot deadlock.
class ProcessBackend final : public ComponentBackend {
 public:
  ProcessBackend(const std::string& command, std::chrono::milliseconds timeout)
      : command_(command), timeout_(timeout) {
    std::signal(SIGPIPE, SIG_IGN);
    int to_child[2];
    int from_child[2];
    if (pipe(to_child) != 0 || pipe(from_child) != 0) {
      throw AdapterFailure(std::string("pipe: ") + std::strerror(errno));
    }
    pid_ = fork();
    if (pid_ < 0) throw AdapterFailure(std::string("fork: ") + std::strerror(errno));
    if (pid_ == 0) {
      dup2(to_child[0], STDIN_FILENO);
      dup2(from_child[1], STDOUT_FILENO);
      close(to_child[0]);
      close(to_child[1]);
      close(from_child[0]);
      close(from_child[1]);
      execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
      _exit(127);
    }
    close(to_child[0]);
    close(from_child[1]);
    write_fd_ = to_child[1];
    read_fd_ = from_child[0];
  }

  ProcessBackend(const ProcessBackend&) = delete;
  ProcessBackend& operator=(const ProcessBackend&) = delete;

  ~ProcessBackend() override {
    if (write_fd_ >= 0) close(write_fd_);
    if (read_fd_ >= 0) close(read_fd_);
    if (pid_ > 0) {
      kill(pid_, SIGKILL);
      int status = 0;
      waitpid(pid_, &status, 0);
    }
  }

  void reset() override {
    send("RESET\n");
    std::string reply = receive();
    if (reply != "OK") fail_reply("RESET", reply);
  }

  std::string step(const std::string& input) override {
    send("IN " + input + "\n");
    std::string reply = receive();
    if (reply.size() < 5 || reply.compare(0, 4, "OUT ") != 0 ||
        reply.find_first_of(" \t", 4) != std::string::npos) {
      fail_reply("IN " + input, reply);
    }
    return reply.substr(4);
  }

 private:
  [[noreturn]] void fail_reply(const std::string& request,
                               const std::string& reply) const {
    throw AdapterFailure("component '" + command_ + "' answered '" + reply +
                         "' to '" + request + "'");
  }

  void send(const std::string& line) {
    std::size_t done = 0;
    while (done < line.size()) {
      ssize_t n = write(write_fd_, line.data() + done, line.size() - done);
      if (n < 0) {
        if (errno == EINTR) continue;
        throw AdapterFailure("component '" + command_ +
                             "' is not reading its input: " + std::strerror(errno));
      }
      done += static_cast<std::size_t>(n);
    }
  }

  std::string receive() {
    auto deadline = std::chrono::steady_clock::now() + timeout_;
    for (;;) {
      auto nl = buffer_.find('\n');
      if (nl != std::string::npos) {
        std::string line = buffer_.substr(0, nl);
        buffer_.erase(0, nl + 1);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return line;
      }
      auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
          deadline - std::chrono::steady_clock::now());
      if (left.count() <= 0) {
        throw AdapterFailure("component '" + command_ + "' gave no reply within " +
                             std::to_string(timeout_.count()) + " ms");
      }
      pollfd pfd{read_fd_, POLLIN, 0};
      int ready = poll(&pfd, 1, static_cast<int>(left.count()));
      if (ready < 0) {
        if (errno == EINTR) continue;
        throw AdapterFailure(std::string("poll: ") + std::strerror(errno));
      }
      if (ready == 0) continue;
      char chunk[256];
      ssize_t n = read(read_fd_, chunk, sizeof chunk);
      if (n < 0) {
        if (errno == EINTR) continue;
        throw AdapterFailure(std::string("read: ") + std::strerror(errno));
      }
      if (n == 0) {
        throw AdapterFailure("component '" + command_ + "' closed its output");
      }
      buffer_.append(chunk, static_cast<std::size_t>(n));
    }
  }

  std::string command_;
  std::chrono::milliseconds timeout_;
  pid_t pid_ = -1;
  int write_fd_ = -1;
  int read_fd_ = -1;
  std::string buffer_;
};

}  // namespace bbmc

#endif  // BBMC_COMPONENT_HPP
