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

#ifndef SLUAUG_PROTOCOL_H_
#define SLUAUG_PROTOCOL_H_

#include <array>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sluaug/template_generator.h"

namespace sluaug {

// Line-oriented request/response protocol spoken with generator processes.
//
//   request:   REQ <id> <direction>\n<payload>\n
//   response:  RES <id> <k>\n followed by k payload lines
//   failure:   ERR <id> <reason>\n
//
// Direction is "nlg" (payload is an MR string, outputs are utterances) or
// "nlu" (payload is an utterance, outputs are MR strings). Ids increase by
// one per request on a connection, starting at 1. Everything is UTF-8 and a
// payload never contains a line break.

enum class Direction { kNlg, kNlu };

std::string_view DirectionName(Direction d);
std::optional<Direction> ParseDirection(std::string_view s);

std::string EncodeRequest(uint64_t id, Direction d, std::string_view payload);
std::string EncodeResponse(uint64_t id, const std::vector<std::string> &outputs);
std::string EncodeError(uint64_t id, std::string_view reason);

using Clock = std::chrono::steady_clock;

// Bidirectional line transport.
class LineChannel {
 public:
  virtual ~LineChannel() = default;

  // Throws BackendUnavailable if the peer is gone.
  virtual void Write(std::string_view data) = 0;

  // Next line without its '\n'; nullopt on end of stream. Throws
  // BackendUnavailable when the deadline passes first.
  virtual std::optional<std::string> ReadLine(Clock::time_point deadline) = 0;
};

// Channel over a pair of file descriptors (the same one for sockets).
class FdChannel : public LineChannel {
 public:
  FdChannel(int read_fd, int write_fd, bool owns_fds);
  ~FdChannel() override;

  FdChannel(const FdChannel &) = delete;
  FdChannel &operator=(const FdChannel &) = delete;

  void Write(std::string_view data) override;
  std::optional<std::string> ReadLine(Clock::time_point deadline) override;

 protected:
  void CloseWrite();

 private:
  int read_fd_;
  int write_fd_;
  bool owns_fds_;
  std::string buffer_;
  bool eof_ = false;
};

// Runs `/bin/sh -c command` with its stdin/stdout wired to the channel.
// Extra environment variables are added on top of the inherited ones.
class SubprocessChannel : public FdChannel {
 public:
  SubprocessChannel(const std::string &command,
                    const std::vector<std::pair<std::string, std::string>> &env);
  ~SubprocessChannel() override;

 private:
  // {read fd, write fd, pid}
  explicit SubprocessChannel(std::array<int, 3> spawned);
  int pid_;
};

// Connects to host:port. Throws BackendUnavailable on failure.
std::unique_ptr<LineChannel> ConnectTcp(const std::string &host_port);

// Anything that can answer one protocol request.
class TextBackend {
 public:
  virtual ~TextBackend() = default;

  // Outputs for one payload, in backend order. Throws BackendError.
  virtual std::vector<std::string> Request(Direction d,
                                           std::string_view payload,
                                           Clock::time_point deadline) = 0;
};

// Protocol client over one channel; one request in flight at a time.
class ProtocolClient : public TextBackend {
 public:
  explicit ProtocolClient(std::unique_ptr<LineChannel> channel);

  std::vector<std::string> Request(Direction d, std::string_view payload,
                                   Clock::time_point deadline) override;

  uint64_t next_id() const { return next_id_; }

 private:
  std::unique_ptr<LineChannel> channel_;
  uint64_t next_id_ = 1;
};

// Recorded request -> response table. File format, one output per line:
//   direction<TAB>input<TAB>output
// Outputs for the same (direction, input) keep file order. Lookups for
// unrecorded inputs return no outputs.
class FixtureBackend : public TextBackend {
 public:
  static FixtureBackend Load(const std::filesystem::path &path);
  static FixtureBackend Parse(std::string_view text);

  void Record(Direction d, const std::string &input, std::string output);
  std::string Format() const;

  std::vector<std::string> Request(Direction d, std::string_view payload,
                                   Clock::time_point deadline) override;

 private:
  std::map<std::pair<Direction, std::string>, std::vector<std::string>> table_;
};

// Sends every input, in order, and returns samples_per_input outputs for each.
// Throws PartialResponse when an input gets fewer outputs than requested
// (extra outputs are dropped), BackendUnavailable once `timeout` has elapsed
// for the whole batch, ProtocolError on malformed traffic or error frames.
std::vector<std::vector<std::string>> ExternalCall(
    TextBackend &backend, Direction direction,
    const std::vector<std::string> &inputs, const DecodingParams &params,
    std::chrono::milliseconds timeout = std::chrono::seconds(60));

// Backend selection: builtin | exec:<command> | tcp:<host:port> |
// fixture:<path>.
struct EndpointSpec {
  enum class Kind { kBuiltin, kExec, kTcp, kFixture };

  Kind kind = Kind::kBuiltin;
  std::string target;

  // Throws ConfigError.
  static EndpointSpec Parse(std::string_view spec);
  std::string ToString() const;
};

// Raw line channel to an exec or tcp endpoint, with the same environment an
// exec backend gets from OpenBackend. Throws ConfigError for other kinds.
std::unique_ptr<LineChannel> OpenChannel(const EndpointSpec &spec,
                                         const DecodingParams &params);

// Opens a backend for a non-builtin spec. Decoding parameters are exported to
// exec children as SLUAUG_TOP_P, SLUAUG_TEMPERATURE and
// SLUAUG_SAMPLES_PER_INPUT, since the frames do not carry them.
std::unique_ptr<TextBackend> OpenBackend(const EndpointSpec &spec,
                                         const DecodingParams &params);

// Server side of the protocol, used by stub backends and conformance tests.
// Malformed frames are answered with ERR and the session continues. A line
// starting with "REQ " always consumes the following payload line.
class ProtocolServer {
 public:
  using Handler =
      std::function<std::vector<std::string>(Direction, const std::string &)>;

  explicit ProtocolServer(Handler handler) : handler_(std::move(handler)) {}

  // Both return at end of input.
  void Serve(std::istream &in, std::ostream &out) const;
  void Serve(LineChannel &channel) const;

 private:
  template <typename ReadLine, typename WriteData>
  void Loop(ReadLine read_line, WriteData write) const;

  Handler handler_;
};

}  // namespace sluaug

#endif  // SLUAUG_PROTOCOL_H_
