// Copyright 2026 The sluaug Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sluaug/protocol.h"

#include <fcntl.h>
#include <netdb.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/socket.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <cstring>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "fmt/format.h"
#include "sluaug/errors.h"
#include "sluaug/text.h"

extern char **environ;

namespace sluaug {
namespace {

void IgnoreSigpipe() {
  static std::once_flag once;
  std::call_once(once, [] { ::signal(SIGPIPE, SIG_IGN); });
}

std::optional<uint64_t> ParseUint(std::string_view s) {
  uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    return std::nullopt;
  }
  return v;
}

// Splits off up to `max_fields - 1` space-separated fields; the last field
// keeps the remainder of the line.
std::vector<std::string_view> SplitFields(std::string_view line,
                                          size_t max_fields) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (out.size() + 1 < max_fields) {
    size_t sp = line.find(' ', start);
    if (sp == std::string_view::npos) break;
    out.push_back(line.substr(start, sp - start));
    start = sp + 1;
  }
  out.push_back(line.substr(start));
  return out;
}

std::string OneLine(std::string_view s) {
  std::string out(s);
  for (char &c : out) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return out;
}

void CheckPayload(std::string_view payload) {
  if (payload.find_first_of("\r\n") != std::string_view::npos) {
    throw ProtocolError("payload contains a line break");
  }
}

}  // namespace

std::string_view DirectionName(Direction d) {
  return d == Direction::kNlg ? "nlg" : "nlu";
}

std::optional<Direction> ParseDirection(std::string_view s) {
  if (s == "nlg") return Direction::kNlg;
  if (s == "nlu") return Direction::kNlu;
  return std::nullopt;
}

std::string EncodeRequest(uint64_t id, Direction d, std::string_view payload) {
  CheckPayload(payload);
  return fmt::format("REQ {} {}\n{}\n", id, DirectionName(d), payload);
}

std::string EncodeResponse(uint64_t id,
                           const std::vector<std::string> &outputs) {
  std::string out = fmt::format("RES {} {}\n", id, outputs.size());
  for (const std::string &o : outputs) {
    out += OneLine(o);
    out += '\n';
  }
  return out;
}

std::string EncodeError(uint64_t id, std::string_view reason) {
  return fmt::format("ERR {} {}\n", id, OneLine(reason));
}

FdChannel::FdChannel(int read_fd, int write_fd, bool owns_fds)
    : read_fd_(read_fd), write_fd_(write_fd), owns_fds_(owns_fds) {
  IgnoreSigpipe();
}

FdChannel::~FdChannel() {
  if (!owns_fds_) return;
  if (read_fd_ >= 0) ::close(read_fd_);
  if (write_fd_ >= 0 && write_fd_ != read_fd_) ::close(write_fd_);
}

void FdChannel::CloseWrite() {
  if (owns_fds_ && write_fd_ >= 0 && write_fd_ != read_fd_) {
    ::close(write_fd_);
    write_fd_ = -1;
  }
}

void FdChannel::Write(std::string_view data) {
  while (!data.empty()) {
    ssize_t n = ::write(write_fd_, data.data(), data.size());
    if (n < 0) {
      if (errno == EINTR) continue;
      throw BackendUnavailable(std::string("write failed: ") +
                               std::strerror(errno));
    }
    data.remove_prefix(static_cast<size_t>(n));
  }
}

std::optional<std::string> FdChannel::ReadLine(Clock::time_point deadline) {
  for (;;) {
    size_t nl = buffer_.find('\n');
    if (nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      return line;
    }
    if (eof_) {
      if (buffer_.empty()) return std::nullopt;
      std::string line = std::move(buffer_);
      buffer_.clear();
      return line;
    }
    auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - Clock::now());
    if (remaining.count() <= 0) {
      throw BackendUnavailable("timed out waiting for backend");
    }
    pollfd pfd{read_fd_, POLLIN, 0};
    int timeout_ms = static_cast<int>(
        std::min<int64_t>(remaining.count(), 1 << 30));
    int rc = ::poll(&pfd, 1, timeout_ms);
    if (rc < 0) {
      if (errno == EINTR) continue;
      throw BackendUnavailable(std::string("poll failed: ") +
                               std::strerror(errno));
    }
    if (rc == 0) continue;
    char chunk[4096];
    ssize_t n = ::read(read_fd_, chunk, sizeof(chunk));
    if (n < 0) {
      if (errno == EINTR || errno == EAGAIN) continue;
      throw BackendUnavailable(std::string("read failed: ") +
                               std::strerror(errno));
    }
    if (n == 0) {
      eof_ = true;
    } else {
      buffer_.append(chunk, static_cast<size_t>(n));
    }
  }
}

namespace {

std::array<int, 3> Spawn(
    const std::string &command,
    const std::vector<std::pair<std::string, std::string>> &env) {
  IgnoreSigpipe();
  int to_child[2];
  int from_child[2];
  if (::pipe2(to_child, O_CLOEXEC) != 0) {
    throw BackendUnavailable("pipe failed");
  }
  if (::pipe2(from_child, O_CLOEXEC) != 0) {
    ::close(to_child[0]);
    ::close(to_child[1]);
    throw BackendUnavailable("pipe failed");
  }

  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_adddup2(&actions, to_child[0], STDIN_FILENO);
  posix_spawn_file_actions_adddup2(&actions, from_child[1], STDOUT_FILENO);

  std::vector<std::string> env_strings;
  for (char **e = environ; *e != nullptr; ++e) {
    std::string_view entry(*e);
    bool overridden = false;
    for (const auto &[key, value] : env) {
      if (entry.substr(0, key.size() + 1) == key + "=") overridden = true;
    }
    if (!overridden) env_strings.emplace_back(entry);
  }
  for (const auto &[key, value] : env) env_strings.push_back(key + "=" + value);
  std::vector<char *> envp;
  for (std::string &s : env_strings) envp.push_back(s.data());
  envp.push_back(nullptr);

  std::string shell = "/bin/sh";
  std::string dash_c = "-c";
  std::string cmd = command;
  char *argv[] = {shell.data(), dash_c.data(), cmd.data(), nullptr};

  pid_t pid = 0;
  int rc = ::posix_spawn(&pid, shell.c_str(), &actions, nullptr, argv,
                         envp.data());
  posix_spawn_file_actions_destroy(&actions);
  ::close(to_child[0]);
  ::close(from_child[1]);
  if (rc != 0) {
    ::close(to_child[1]);
    ::close(from_child[0]);
    throw BackendUnavailable("cannot start backend: " + command);
  }
  return {from_child[0], to_child[1], static_cast<int>(pid)};
}

}  // namespace

SubprocessChannel::SubprocessChannel(
    const std::string &command,
    const std::vector<std::pair<std::string, std::string>> &env)
    : SubprocessChannel(Spawn(command, env)) {}

SubprocessChannel::SubprocessChannel(std::array<int, 3> spawned)
    : FdChannel(spawned[0], spawned[1], true), pid_(spawned[2]) {}

SubprocessChannel::~SubprocessChannel() {
  // Closing stdin is the shutdown signal; give the child a moment to exit.
  CloseWrite();
  for (int i = 0; i < 200; ++i) {
    int status = 0;
    pid_t r = ::waitpid(pid_, &status, WNOHANG);
    if (r == pid_ || r < 0) return;
    std::this_thread::sleep_for(std::chrono::milliseconds(10));
  }
  ::kill(pid_, SIGKILL);
  int status = 0;
  ::waitpid(pid_, &status, 0);
}

std::unique_ptr<LineChannel> ConnectTcp(const std::string &host_port) {
  IgnoreSigpipe();
  size_t colon = host_port.rfind(':');
  if (colon == std::string::npos) {
    throw BackendUnavailable("expected host:port, got " + host_port);
  }
  std::string host = host_port.substr(0, colon);
  std::string port = host_port.substr(colon + 1);
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo *res = nullptr;
  if (::getaddrinfo(host.c_str(), port.c_str(), &hints, &res) != 0) {
    throw BackendUnavailable("cannot resolve " + host_port);
  }
  int fd = -1;
  for (addrinfo *ai = res; ai != nullptr; ai = ai->ai_next) {
    fd = ::socket(ai->ai_family, ai->ai_socktype | SOCK_CLOEXEC,
                  ai->ai_protocol);
    if (fd < 0) continue;
    if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) break;
    ::close(fd);
    fd = -1;
  }
  ::freeaddrinfo(res);
  if (fd < 0) throw BackendUnavailable("cannot connect to " + host_port);
  return std::make_unique<FdChannel>(fd, fd, true);
}

ProtocolClient::ProtocolClient(std::unique_ptr<LineChannel> channel)
    : channel_(std::move(channel)) {}

std::vector<std::string> ProtocolClient::Request(Direction d,
                                                 std::string_view payload,
                                                 Clock::time_point deadline) {
  const uint64_t id = next_id_++;
  channel_->Write(EncodeRequest(id, d, payload));

  std::optional<std::string> header = channel_->ReadLine(deadline);
  if (!header) throw BackendUnavailable("backend closed the connection");
  std::vector<std::string_view> fields = SplitFields(*header, 3);
  if (fields.size() == 3 && fields[0] == "ERR") {
    throw ProtocolError(fmt::format("backend rejected request {}: {}", id,
                                    fields[2]));
  }
  if (fields.size() != 3 || fields[0] != "RES") {
    throw ProtocolError("malformed response header: " + *header);
  }
  std::optional<uint64_t> got_id = ParseUint(fields[1]);
  std::optional<uint64_t> count = ParseUint(fields[2]);
  if (!got_id || !count) {
    throw ProtocolError("malformed response header: " + *header);
  }
  if (*got_id != id) {
    throw ProtocolError(
        fmt::format("response id {} does not match request id {}", *got_id,
                    id));
  }
  std::vector<std::string> outputs;
  outputs.reserve(*count);
  for (uint64_t i = 0; i < *count; ++i) {
    std::optional<std::string> line = channel_->ReadLine(deadline);
    if (!line) throw ProtocolError("response truncated by end of stream");
    outputs.push_back(std::move(*line));
  }
  return outputs;
}

FixtureBackend FixtureBackend::Parse(std::string_view text) {
  FixtureBackend fixture;
  size_t line_no = 0;
  size_t start = 0;
  while (start < text.size()) {
    ++line_no;
    size_t nl = text.find('\n', start);
    std::string_view line = text.substr(
        start, (nl == std::string_view::npos ? text.size() : nl) - start);
    start = nl == std::string_view::npos ? text.size() : nl + 1;
    if (line.empty() || line.front() == '#') continue;
    size_t t1 = line.find('\t');
    size_t t2 = t1 == std::string_view::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string_view::npos) {
      throw FormatError(line_no, "expected direction<TAB>input<TAB>output");
    }
    std::optional<Direction> d = ParseDirection(line.substr(0, t1));
    if (!d) throw FormatError(line_no, "unknown direction");
    fixture.Record(*d, std::string(line.substr(t1 + 1, t2 - t1 - 1)),
                   std::string(line.substr(t2 + 1)));
  }
  return fixture;
}

FixtureBackend FixtureBackend::Load(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw BackendUnavailable("cannot open fixture " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return Parse(buf.str());
}

void FixtureBackend::Record(Direction d, const std::string &input,
                            std::string output) {
  table_[{d, input}].push_back(std::move(output));
}

std::string FixtureBackend::Format() const {
  std::string out;
  for (const auto &[key, outputs] : table_) {
    for (const std::string &o : outputs) {
      out += fmt::format("{}\t{}\t{}\n", DirectionName(key.first), key.second,
                         o);
    }
  }
  return out;
}

std::vector<std::string> FixtureBackend::Request(Direction d,
                                                 std::string_view payload,
                                                 Clock::time_point) {
  CheckPayload(payload);
  auto it = table_.find({d, std::string(payload)});
  if (it == table_.end()) return {};
  return it->second;
}

std::vector<std::vector<std::string>> ExternalCall(
    TextBackend &backend, Direction direction,
    const std::vector<std::string> &inputs, const DecodingParams &params,
    std::chrono::milliseconds timeout) {
  const Clock::time_point deadline = Clock::now() + timeout;
  std::vector<std::vector<std::string>> out;
  out.reserve(inputs.size());
  for (size_t i = 0; i < inputs.size(); ++i) {
    std::vector<std::string> outputs =
        backend.Request(direction, inputs[i], deadline);
    if (outputs.size() < params.samples_per_input) {
      throw PartialResponse(i, params.samples_per_input, outputs.size());
    }
    outputs.resize(params.samples_per_input);
    out.push_back(std::move(outputs));
  }
  return out;
}

EndpointSpec EndpointSpec::Parse(std::string_view spec) {
  std::string_view s = Trim(spec);
  if (s == "builtin") return {Kind::kBuiltin, ""};
  size_t colon = s.find(':');
  if (colon == std::string_view::npos || colon + 1 == s.size()) {
    throw ConfigError("bad backend spec '" + std::string(spec) + "'");
  }
  std::string_view scheme = s.substr(0, colon);
  std::string target(s.substr(colon + 1));
  if (scheme == "exec") return {Kind::kExec, target};
  if (scheme == "tcp") return {Kind::kTcp, target};
  if (scheme == "fixture") return {Kind::kFixture, target};
  throw ConfigError("unknown backend scheme '" + std::string(scheme) + "'");
}

std::string EndpointSpec::ToString() const {
  switch (kind) {
    case Kind::kBuiltin:
      return "builtin";
    case Kind::kExec:
      return "exec:" + target;
    case Kind::kTcp:
      return "tcp:" + target;
    case Kind::kFixture:
      return "fixture:" + target;
  }
  return "builtin";
}

std::unique_ptr<LineChannel> OpenChannel(const EndpointSpec &spec,
                                         const DecodingParams &params) {
  switch (spec.kind) {
    case EndpointSpec::Kind::kExec:
      return std::make_unique<SubprocessChannel>(
          spec.target,
          std::vector<std::pair<std::string, std::string>>{
              {"SLUAUG_TOP_P", fmt::format("{}", params.top_p)},
              {"SLUAUG_TEMPERATURE", fmt::format("{}", params.temperature)},
              {"SLUAUG_SAMPLES_PER_INPUT",
               fmt::format("{}", params.samples_per_input)}});
    case EndpointSpec::Kind::kTcp:
      return ConnectTcp(spec.target);
    case EndpointSpec::Kind::kFixture:
    case EndpointSpec::Kind::kBuiltin:
      break;
  }
  throw ConfigError("backend '" + spec.ToString() +
                    "' is not a protocol endpoint");
}

std::unique_ptr<TextBackend> OpenBackend(const EndpointSpec &spec,
                                         const DecodingParams &params) {
  switch (spec.kind) {
    case EndpointSpec::Kind::kExec:
    case EndpointSpec::Kind::kTcp:
      return std::make_unique<ProtocolClient>(OpenChannel(spec, params));
    case EndpointSpec::Kind::kFixture:
      return std::make_unique<FixtureBackend>(
          FixtureBackend::Load(spec.target));
    case EndpointSpec::Kind::kBuiltin:
      break;
  }
  throw ConfigError("builtin backend has no protocol endpoint");
}

template <typename ReadLine, typename WriteData>
void ProtocolServer::Loop(ReadLine read_line, WriteData write) const {
  for (;;) {
    std::optional<std::string> header = read_line();
    if (!header) return;
    if (header->rfind("REQ ", 0) != 0) {
      write(EncodeError(0, "malformed frame"));
      continue;
    }
    std::vector<std::string_view> fields = SplitFields(*header, 3);
    uint64_t id = 0;
    bool id_ok = false;
    std::optional<Direction> direction;
    if (fields.size() == 3) {
      if (std::optional<uint64_t> parsed = ParseUint(fields[1])) {
        id = *parsed;
        id_ok = true;
      }
      direction = ParseDirection(fields[2]);
    }
    std::optional<std::string> payload = read_line();
    if (!payload) {
      write(EncodeError(id, "missing payload"));
      return;
    }
    if (!id_ok || !direction) {
      write(EncodeError(id, "malformed request header"));
      continue;
    }
    try {
      write(EncodeResponse(id, handler_(*direction, *payload)));
    } catch (const std::exception &e) {
      write(EncodeError(id, e.what()));
    }
  }
}

void ProtocolServer::Serve(std::istream &in, std::ostream &out) const {
  Loop(
      [&in]() -> std::optional<std::string> {
        std::string line;
        if (!std::getline(in, line)) return std::nullopt;
        return line;
      },
      [&out](const std::string &data) { out << data << std::flush; });
}

void ProtocolServer::Serve(LineChannel &channel) const {
  Loop([&channel] { return channel.ReadLine(Clock::time_point::max()); },
       [&channel](const std::string &data) { channel.Write(data); });
}

}  // namespace sluaug
