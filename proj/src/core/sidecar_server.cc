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

#include "core/sidecar_server.h"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>

#include "core/error.h"

namespace kgd {

namespace {

bool WriteAll(int fd, std::string_view data) {
  while (!data.empty()) {
    ssize_t n = ::send(fd, data.data(), data.size(), MSG_NOSIGNAL);
    if (n < 0 && errno == ENOTSOCK) n = ::write(fd, data.data(), data.size());
    if (n < 0) {
      if (errno == EINTR) continue;
      return false;
    }
    data.remove_prefix(static_cast<std::size_t>(n));
  }
  return true;
}

std::string TooLongResponse() {
  return R"({"seq":null,"session_id":null,"ok":false,"error":{"code":)"
         R"("bad-request","message":"frame exceeds the size limit"}})";
}

}  // namespace

void ServeStream(SidecarService& service, int in_fd, int out_fd) {
  std::string buf;
  bool discarding = false;
  char chunk[65536];
  for (;;) {
    const ssize_t n = ::read(in_fd, chunk, sizeof(chunk));
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) break;
    buf.append(chunk, static_cast<std::size_t>(n));
    std::size_t start = 0;
    for (;;) {
      const std::size_t nl = buf.find('\n', start);
      if (nl == std::string::npos) break;
      std::string_view line(buf.data() + start, nl - start);
      start = nl + 1;
      if (discarding) {
        discarding = false;
        continue;
      }
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
      std::string resp = line.size() > kMaxFrameBytes
                             ? TooLongResponse()
                             : service.HandleFrame(line);
      resp.push_back('\n');
      if (!WriteAll(out_fd, resp)) return;
    }
    buf.erase(0, start);
    if (buf.size() > kMaxFrameBytes) {
      buf.clear();
      if (!discarding && !WriteAll(out_fd, TooLongResponse() + "\n")) return;
      discarding = true;
    }
  }
}

SidecarServer::SidecarServer(SidecarService& service) : service_(service) {}

SidecarServer::~SidecarServer() { Stop(); }

int SidecarServer::Start(const std::string& host, int port) {
  if (running_) throw Error(ErrorCode::kInvalidArgument, "server already running");
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(static_cast<std::uint16_t>(port));
  if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
    throw Error(ErrorCode::kIo, "bad listen address '" + host + "'");
  }
  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0) throw Error(ErrorCode::kIo, std::strerror(errno));
  const int one = 1;
  ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) < 0 ||
      ::listen(listen_fd_, 64) < 0) {
    const std::string msg = std::strerror(errno);
    ::close(listen_fd_);
    listen_fd_ = -1;
    throw Error(ErrorCode::kIo, "cannot listen on " + host + ":" +
                                    std::to_string(port) + ": " + msg);
  }
  socklen_t len = sizeof(addr);
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
  running_ = true;
  acceptor_ = std::thread([this] { AcceptLoop(); });
  return port_;
}

void SidecarServer::AcceptLoop() {
  while (running_) {
    const int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) {
      if (errno == EINTR || errno == ECONNABORTED) continue;
      break;
    }
    const int one = 1;
    ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
    std::lock_guard lock(mu_);
    if (!running_) {
      ::close(fd);
      break;
    }
    // Reap connections that have ended.
    for (auto it = workers_.begin(); it != workers_.end();) {
      if (it->done->load()) {
        it->thread.join();
        it = workers_.erase(it);
      } else {
        ++it;
      }
    }
    conn_fds_.push_back(fd);
    auto done = std::make_shared<std::atomic<bool>>(false);
    workers_.push_back({std::thread([this, fd, done] {
                          ServeStream(service_, fd, fd);
                          std::lock_guard inner(mu_);
                          auto it = std::find(conn_fds_.begin(),
                                              conn_fds_.end(), fd);
                          if (it != conn_fds_.end()) {
                            conn_fds_.erase(it);
                            ::close(fd);
                          }
                          done->store(true);
                        }),
                        done});
  }
}

void SidecarServer::Stop() {
  if (!running_.exchange(false)) return;
  ::shutdown(listen_fd_, SHUT_RDWR);
  ::close(listen_fd_);
  listen_fd_ = -1;
  if (acceptor_.joinable()) acceptor_.join();
  std::vector<Worker> workers;
  {
    std::lock_guard lock(mu_);
    for (int fd : conn_fds_) ::shutdown(fd, SHUT_RDWR);
    workers.swap(workers_);
  }
  for (auto& w : workers) w.thread.join();
  std::lock_guard lock(mu_);
  for (int fd : conn_fds_) ::close(fd);
  conn_fds_.clear();
}

}  // namespace kgd
