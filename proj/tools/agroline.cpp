/*
 * Copyright 2026 The Agroline Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <pthread.h>
#include <signal.h>

#include <iostream>
#include <thread>

#include "agroline/cli.hpp"
#include "agroline/server.hpp"

namespace {

int serve(const agroline::cli::CliConfig& c, std::ostream& out, std::ostream& err) {
  agroline::server::ServerOptions options;
  options.params = c.params;
  if (c.save_dir) options.save_dir = *c.save_dir;
  agroline::server::Server server(options);

  // Signals go to a dedicated thread that stops the listener.
  sigset_t set;
  sigemptyset(&set);
  sigaddset(&set, SIGINT);
  sigaddset(&set, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &set, nullptr);

  const int port = server.bind(c.host, c.port);
  if (port < 0) {
    err << "error: cannot listen on " << c.host << ":" << c.port << "\n";
    return agroline::cli::kInputError;
  }
  out << "listening on http://" << c.host << ":" << port << "/" << std::endl;

  std::thread waiter([&] {
    int sig = 0;
    sigwait(&set, &sig);
    server.stop();
  });
  server.listen_after_bind();
  // A stop without a signal leaves the waiter blocked; wake it.
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  out << "stopped" << std::endl;
  return agroline::cli::kOk;
}

}  // namespace

int main(int argc, char** argv) {
  return agroline::cli::run(argc, argv, std::cout, std::cerr, serve);
}
