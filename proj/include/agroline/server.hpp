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

#ifndef AGROLINE_SERVER_HPP
#define AGROLINE_SERVER_HPP

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "agroline/export.hpp"
#include "agroline/planner.hpp"
#include "agroline/site.hpp"
#include "httplib.h"
#include "json.hpp"

namespace agroline::server {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

struct ServerOptions {
  PlanParams params;
  std::size_t contours = 10;
  std::optional<std::filesystem::path> save_dir;
  Clock::duration idle_timeout = std::chrono::hours(1);
  std::function<Clock::time_point()> now = [] { return Clock::now(); };
};

struct Session {
  std::string id;
  Site site;
  std::optional<SubdivisionPairs> pairs;
  std::optional<CoveragePlan> plan;
  Clock::time_point created_at;
  Clock::time_point last_used;
  std::mutex mutex;  // one operation at a time per session

  Session(std::string id_, Site site_, Clock::time_point t)
      : id(std::move(id_)), site(std::move(site_)), created_at(t), last_used(t) {}
};

/// In-memory sessions with idle eviction.
class SessionStore {
 public:
  explicit SessionStore(Clock::duration idle) : idle_(idle), rng_(std::random_device{}()) {}

  std::shared_ptr<Session> add(Site site, Clock::time_point now) {
    std::lock_guard lock(mutex_);
    std::string id;
    do {
      id = token();
    } while (sessions_.count(id));
    auto s = std::make_shared<Session>(id, std::move(site), now);
    sessions_.emplace(id, s);
    return s;
  }

  std::shared_ptr<Session> find(const std::string& id) {
    std::lock_guard lock(mutex_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) return nullptr;
    return it->second;
  }

  /// Drops sessions idle for longer than the timeout. Returns how many.
  std::size_t evict(Clock::time_point now) {
    std::lock_guard lock(mutex_);
    std::size_t n = 0;
    for (auto it = sessions_.begin(); it != sessions_.end();) {
      Clock::time_point last;
      {
        std::unique_lock busy(it->second->mutex, std::try_to_lock);
        if (!busy.owns_lock()) {
          ++it;
          continue;
        }
        last = it->second->last_used;
      }
      if (now - last > idle_) {
        it = sessions_.erase(it);
        ++n;
      } else {
        ++it;
      }
    }
    return n;
  }

  std::size_t size() const {
    std::lock_guard lock(mutex_);
    return sessions_.size();
  }

 private:
  std::string token() {
    static constexpr char kHex[] = "0123456789abcdef";
    std::string t(32, '0');
    std::uniform_int_distribution<int> nibble(0, 15);
    for (char& ch : t) ch = kHex[nibble(rng_)];
    return t;
  }

  Clock::duration idle_;
  mutable std::mutex mutex_;
  std::mt19937_64 rng_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
};

namespace detail {

inline void send_json(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

inline void send_error(httplib::Response& res, int status, const std::string& kind,
                       const std::string& message, std::size_t line = 0) {
  Json body{{"error", kind}, {"message", message}};
  if (line > 0) body["line"] = line;
  send_json(res, status, body);
}

inline void send_error(httplib::Response& res, int status, const Error& e) {
  send_error(res, status, to_string(e.kind()), e.what(), e.line());
}

inline Json bounds_json(const Bounds& b) {
  return {{"xmin", b.xmin}, {"xmax", b.xmax}, {"ymin", b.ymin}, {"ymax", b.ymax}};
}

inline Layer hull_layer(const PlotPolygon& plot) {
  const PlotPolygon h = convex_hull(plot.vertices());
  std::vector<Vec2> ring(h.vertices().begin(), h.vertices().end());
  return Layer{"hull", {Geometry{Geometry::Kind::Ring, {std::move(ring)}, ""}}, "hull"};
}

/// Pairs from JSON [[[x, y], [x, y]], ...]. Throws json errors on bad shape.
inline SubdivisionPairs pairs_from_json(const nlohmann::json& j) {
  const nlohmann::json& list = j.is_object() ? j.at("pairs") : j;
  if (!list.is_array()) throw nlohmann::json::type_error::create(302, "pairs must be an array", &j);
  SubdivisionPairs out;
  for (const auto& pair : list) {
    if (!pair.is_array() || pair.size() != 2) {
      throw nlohmann::json::type_error::create(302, "each pair needs two points", &pair);
    }
    auto point = [](const nlohmann::json& p) {
      if (!p.is_array() || p.size() != 2) {
        throw nlohmann::json::type_error::create(302, "a point is [x, y]", &p);
      }
      return Vec2{p[0].get<double>(), p[1].get<double>()};
    };
    out.pairs.emplace_back(point(pair[0]), point(pair[1]));
  }
  return out;
}

inline Json pairs_json(const SubdivisionPairs& pairs) {
  Json out = Json::array();
  for (const auto& [a, b] : pairs.pairs) out.push_back({{a.x, a.y}, {b.x, b.y}});
  return out;
}

}  // namespace detail

/// HTTP front end over a session store.
class Server {
 public:
  explicit Server(ServerOptions options = {})
      : options_(std::move(options)), store_(options_.idle_timeout) {
    routes();
  }

  httplib::Server& http() { return http_; }
  SessionStore& sessions() { return store_; }

  /// Binds and returns the port, or -1. Port 0 picks a free port.
  int bind(const std::string& host, int port) {
    if (port == 0) return http_.bind_to_any_port(host);
    return http_.bind_to_port(host, port) ? port : -1;
  }
  bool listen_after_bind() { return http_.listen_after_bind(); }
  void stop() { http_.stop(); }
  void wait_until_ready() { http_.wait_until_ready(); }

  /// Scene for a session: terrain, contours, plot hull, plot and the latest plan.
  RenderScene scene(const Session& s) const {
    const CoveragePlan* plan = s.plan ? &*s.plan : nullptr;
    RenderScene sc = scene_from_plan(s.site.terrain, s.site.surface, s.site.plot, plan,
                                     options_.contours, options_.params);
    Layer hull = detail::hull_layer(s.site.plot);
    const auto at = std::find_if(sc.layers.begin(), sc.layers.end(),
                                 [](const Layer& l) { return l.name == "plot"; });
    sc.layers.insert(at, std::move(hull));
    return sc;
  }

 private:
  Clock::time_point now() const { return options_.now(); }

  std::shared_ptr<Session> session_for(const httplib::Request& req, httplib::Response& res) {
    store_.evict(now());
    auto s = store_.find(req.path_params.at("id"));
    if (!s) detail::send_error(res, 404, "not found", "unknown session");
    return s;
  }

  void routes() {
    http_.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                               {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                               {"Access-Control-Allow-Headers", "Content-Type"}});
    http_.set_payload_max_length(64u << 20);
    // No SO_REUSEPORT, so a busy port fails to bind.
    http_.set_socket_options([](socket_t sock) {
      int yes = 1;
      setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof yes);
    });
    http_.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) {
      res.status = 204;
    });
    http_.set_error_handler([](const httplib::Request&, httplib::Response& res) {
      if (res.body.empty()) {
        detail::send_error(res, res.status, "http", httplib::status_message(res.status));
      }
    });
    http_.set_exception_handler(
        [](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
          std::string what = "internal error";
          try {
            std::rethrow_exception(ep);
          } catch (const std::exception& e) {
            what = e.what();
          } catch (...) {
          }
          detail::send_error(res, 500, "internal", what);
        });

    http_.Post("/sessions", [this](const httplib::Request& req, httplib::Response& res) {
      create(req, res);
    });
    http_.Post("/sessions/:id/pairs", [this](const httplib::Request& req, httplib::Response& res) {
      propose(req, res);
    });
    http_.Post("/sessions/:id/save", [this](const httplib::Request& req, httplib::Response& res) {
      save(req, res);
    });
    http_.Get("/sessions/:id/scene", [this](const httplib::Request& req, httplib::Response& res) {
      auto s = session_for(req, res);
      if (!s) return;
      std::lock_guard lock(s->mutex);
      s->last_used = now();
      Json body{{"id", s->id}, {"scene", scene_json(scene(*s))}};
      body["pairs"] = s->pairs ? detail::pairs_json(*s->pairs) : Json::array();
      body["plan"] = s->plan ? plan_json(*s->plan, options_.params) : Json(nullptr);
      detail::send_json(res, 200, body);
    });
  }

  void create(const httplib::Request& req, httplib::Response& res) {
    store_.evict(now());
    std::string terrain, plot;
    if (req.is_multipart_form_data()) {
      if (!req.has_file("terrain") || !req.has_file("plot")) {
        detail::send_error(res, 400, "request", "multipart upload needs terrain and plot parts");
        return;
      }
      terrain = req.get_file_value("terrain").content;
      plot = req.get_file_value("plot").content;
    } else {
      try {
        const auto j = nlohmann::json::parse(req.body);
        terrain = j.at("terrain").get<std::string>();
        plot = j.at("plot").get<std::string>();
      } catch (const nlohmann::json::exception& e) {
        detail::send_error(res, 400, "request",
                           std::string("expected JSON {terrain, plot} with file text: ") +
                               e.what());
        return;
      }
    }

    std::optional<Site> site;
    try {
      site.emplace(load_site(terrain, plot, options_.params));
    } catch (const Error& e) {
      detail::send_error(res, 400, e);
      return;
    }
    auto s = store_.add(std::move(*site), now());
    std::lock_guard lock(s->mutex);
    if (s->site.convex) {
      try {
        s->plan = plan_convex(s->site.plot, s->site.surface, options_.params);
      } catch (const Error& e) {
        detail::send_error(res, 400, e);
        return;
      }
    }
    const Site& st = s->site;
    Json body{{"id", s->id},
              {"bounds", detail::bounds_json(st.terrain.bounds)},
              {"H", st.extremes.H},
              {"L", st.extremes.L},
              {"convex", st.convex},
              {"needs_subdivision", !st.convex},
              {"scene", scene_json(scene(*s))}};
    body["plan"] = s->plan ? plan_json(*s->plan, options_.params) : Json(nullptr);
    detail::send_json(res, 201, body);
  }

  void propose(const httplib::Request& req, httplib::Response& res) {
    auto s = session_for(req, res);
    if (!s) return;
    std::lock_guard lock(s->mutex);
    s->last_used = now();

    SubdivisionPairs pairs;
    try {
      const auto j = nlohmann::json::parse(req.body);
      pairs = detail::pairs_from_json(j);
    } catch (const nlohmann::json::exception& e) {
      detail::send_error(res, 400, "request",
                         std::string("expected JSON {\"pairs\": [[[x, y], [x, y]], ...]}: ") +
                             e.what());
      return;
    }
    try {
      validate_pairs(pairs, s->site.plot);
      CoveragePlan plan = plan_concave(s->site.plot, pairs, s->site.surface, options_.params);
      s->pairs = std::move(pairs);
      s->plan = std::move(plan);
    } catch (const Error& e) {
      detail::send_error(res, 422, e);
      return;
    }
    Json body{{"id", s->id},
              {"pairs", detail::pairs_json(*s->pairs)},
              {"plan", plan_json(*s->plan, options_.params)}};
    detail::send_json(res, 200, body);
  }

  void save(const httplib::Request& req, httplib::Response& res) {
    auto s = session_for(req, res);
    if (!s) return;
    std::lock_guard lock(s->mutex);
    s->last_used = now();
    if (!s->pairs) {
      detail::send_error(res, 409, "conflict", "no subdivision pairs proposed yet");
      return;
    }
    const std::string text = format_eplot(*s->pairs);
    if (options_.save_dir) {
      std::error_code ec;
      std::filesystem::create_directories(*options_.save_dir, ec);
      const auto path = *options_.save_dir / (s->id + ".eplot");
      std::ofstream out(path, std::ios::binary | std::ios::trunc);
      out << text;
      if (!out) {
        detail::send_error(res, 500, "io", "cannot write " + path.string());
        return;
      }
      res.set_header("X-Agroline-Saved", path.string());
    }
    res.status = 200;
    res.set_header("Content-Disposition", "attachment; filename=\"plot.eplot\"");
    res.set_content(text, "text/plain");
  }

  ServerOptions options_;
  SessionStore store_;
  httplib::Server http_;
};

}  // namespace agroline::server

#endif  // AGROLINE_SERVER_HPP
