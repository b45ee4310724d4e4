#include "ecp/server.hpp"

#include <cstdlib>

#include <json.hpp>

#include "ecp/design_basis.hpp"
#include "ecp/error.hpp"
#include "ecp/pipeline.hpp"
#include "ecp/spec_file.hpp"
#include "ecp/weights.hpp"

// After Eigen: <resolv.h>, pulled in by httplib, defines a `_res` macro that
// collides with Eigen parameter names.
#include <httplib.h>

namespace ecp {
namespace {

using nlohmann::json;

constexpr int kMaxSamples = 10000;

struct BadRequest {
  int status;
  std::string message;
};

json error_body(const std::string& message, const json& seq) {
  return {{"error", message}, {"seq", seq}};
}

json parse_body(const std::string& body) {
  try {
    return json::parse(body);
  } catch (const json::parse_error& e) {
    throw BadRequest{400, std::string("request body is not valid JSON: ") + e.what()};
  }
}

json seq_of(const json& req) {
  return req.is_object() && req.contains("seq") ? req.at("seq") : json(nullptr);
}

const json& spec_of(const json& req) {
  if (req.is_object() && req.contains("spec")) return req.at("spec");
  return req;
}

int int_field(const json& req, const char* key, int fallback, int lo, int hi) {
  if (!req.is_object() || !req.contains(key)) return fallback;
  const json& v = req.at(key);
  if (!v.is_number_integer() || v.get<long long>() < lo || v.get<long long>() > hi)
    throw BadRequest{422, std::string(key) + ": expected an integer in [" + std::to_string(lo) +
                              ", " + std::to_string(hi) + "]"};
  return v.get<int>();
}

template <class Fn>
HttpReply guarded(const std::string& body, Fn&& fn) {
  json seq = nullptr;
  try {
    const json req = parse_body(body);
    seq = seq_of(req);
    json out = fn(req);
    out["seq"] = seq;
    return {200, out.dump()};
  } catch (const BadRequest& e) {
    return {e.status, error_body(e.message, seq).dump()};
  } catch (const Error& e) {
    json err = error_body(e.what(), seq);
    err["code"] = std::string(to_string(e.code()));
    return {422, err.dump()};
  } catch (const std::exception& e) {
    return {500, error_body(e.what(), seq).dump()};
  }
}

}  // namespace

ServerOptions ServerOptions::from_env() {
  ServerOptions o;
  if (const char* origin = std::getenv("ECP_ALLOW_ORIGIN"); origin && *origin) o.allow_origin = origin;
  if (const char* bind = std::getenv("ECP_BIND"); bind && *bind) {
    const std::string b = bind;
    const auto colon = b.rfind(':');
    if (colon == std::string::npos) {
      o.host = b;
    } else {
      o.host = b.substr(0, colon);
      o.port = std::stoi(b.substr(colon + 1));
    }
  }
  return o;
}

HttpReply handle_check(const std::string& body) {
  return guarded(body, [](const json& req) {
    const SpecFile spec = parse_spec(spec_of(req));
    const SplineSpace space = spec.build();
    AnalysisOptions opts;
    if (req.contains("tol")) {
      if (!req.at("tol").is_number() || !(req.at("tol").get<double>() > 0.0))
        throw BadRequest{422, "tol: expected a positive number"};
      opts.tol_scale = req.at("tol").get<double>();
    }
    const Analysis analysis = analyze(space, opts);
    json out = report_json(analysis);
    // Plot data for the studio: basis and weights on a per-interval grid.
    const int grid = int_field(req, "grid", 0, 0, kMaxSamples);
    if (grid >= 2 && analysis.transitions) {
      const DesignBasis basis(space, *analysis.transitions);
      out["basis"] = basis_json(sample_basis(basis, grid));
      out["weights"] = weights_json(sample_weights(space, *analysis.transitions, grid));
    }
    return out;
  });
}

HttpReply handle_curve(const std::string& body) {
  return guarded(body, [](const json& req) {
    const SpecFile spec = parse_spec(spec_of(req));
    const SplineSpace space = spec.build();
    if (!req.contains("control") || !req.at("control").is_array() || req.at("control").empty())
      throw BadRequest{422, "control: expected an array of points"};
    const json& ctrl = req.at("control");
    const std::size_t dim = ctrl[0].is_array() ? ctrl[0].size() : 0;
    if (dim < 1) throw BadRequest{422, "control[0]: expected an array of coordinates"};
    ControlPolygon poly;
    poly.points.resize(static_cast<Eigen::Index>(ctrl.size()), static_cast<Eigen::Index>(dim));
    for (std::size_t p = 0; p < ctrl.size(); ++p) {
      if (!ctrl[p].is_array() || ctrl[p].size() != dim)
        throw BadRequest{422, "control[" + std::to_string(p) + "]: expected " +
                                  std::to_string(dim) + " coordinates"};
      for (std::size_t c = 0; c < dim; ++c) {
        if (!ctrl[p][c].is_number())
          throw BadRequest{422, "control[" + std::to_string(p) + "]: expected numbers"};
        poly.points(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(c)) =
            ctrl[p][c].get<double>();
      }
    }
    const int samples = int_field(req, "samples", 50, 2, kMaxSamples);
    const TransitionSet ts = compute_transitions(space);
    const DesignBasis basis(space, ts);
    const CurveSample curve = sample_curve(basis, poly, samples);
    return json{{"points", curve_json(curve)}, {"m", space.dim()}, {"k", space.knot_count()}};
  });
}

HttpReply handle_catalog(const std::string& seq) {
  json out;
  out["tokens"] = {"1", "x", "x^K", "cos", "sin", "cosh", "sinh", "x*cos", "x*sin", "exp(A)"};
  json table = json::array();
  for (const auto& entry : critical_length_table())
    table.push_back({{"tokens", entry.tokens}, {"bound", entry.bound}});
  out["critical_lengths"] = std::move(table);
  if (seq.empty()) {
    out["seq"] = nullptr;
  } else {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(seq, &used);
      out["seq"] = used == seq.size() ? json(v) : json(seq);
    } catch (const std::exception&) {
      out["seq"] = seq;
    }
  }
  return {200, out.dump()};
}

std::unique_ptr<httplib::Server> make_server(const ServerOptions& options) {
  auto server = std::make_unique<httplib::Server>();
  const std::string origin = options.allow_origin;
  server->set_default_headers({{"Access-Control-Allow-Origin", origin},
                               {"Access-Control-Allow-Headers", "Content-Type"},
                               {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
  auto reply = [](httplib::Response& res, const HttpReply& r) {
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  server->Post("/api/check", [reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, handle_check(req.body));
  });
  server->Post("/api/curve", [reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, handle_curve(req.body));
  });
  server->Get("/api/catalog", [reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, handle_catalog(req.has_param("seq") ? req.get_param_value("seq") : ""));
  });
  server->Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
  });
  return server;
}

}  // namespace ecp
