// Copyright 2026 The kgdecode Authors.
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

#ifndef KGDECODE_CORE_SIDECAR_SERVER_H_
#define KGDECODE_CORE_SIDECAR_SERVER_H_

#include <atomic>
#include <cstddef>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "core/sidecar.h"

namespace kgd {

// Longest accepted frame. Longer lines get a bad-request response and are
// discarded up to the next newline.
inline constexpr std::size_t kMaxFrameBytes = 64u << 20;

// Reads newline-delimited frames from `in_fd` until EOF and writes one
// response line per frame to `out_fd`. Empty lines are ignored.
void ServeStream(SidecarService& service, int in_fd, int out_fd);

// Newline-delimited JSON over TCP, one thread per connection.
class SidecarServer {
 public:
  explicit SidecarServer(SidecarService& service);
  ~SidecarServer();

  SidecarServer(const SidecarServer&) = delete;
  SidecarServer& operator=(const SidecarServer&) = delete;

  // Binds and starts accepting. Port 0 picks an ephemeral port. Returns the
  // bound port. Throws Error(kIo).
  int Start(const std::string& host, int port);
  // Closes the listener and every open connection, then joins all threads.
  void Stop();

  int port() const { return port_; }

 private:
  void AcceptLoop();

  SidecarService& service_;
  int listen_fd_ = -1;
  int port_ = 0;
  std::atomic<bool> running_{false};
  std::thread acceptor_;
  std::mutex mu_;
  struct Worker {
    std::thread thread;
    std::shared_ptr<std::atomic<bool>> done;
  };
  std::vector<int> conn_fds_;
  std::vector<Worker> workers_;
};

}  // namespace kgd

#endif  // KGDECODE_CORE_SIDECAR_SERVER_H_
