// Copyright 2026 The abp Authors
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

#include "abp/serialize.hpp"

#include <cmath>
#include <istream>
#include <optional>
#include <ostream>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace abp {

void write_configuration(std::ostream& out, const Configuration& c) {
  const Rect& w = c.window();
  out << "window " << w.a << ' ' << w.b << ' ' << w.c << ' ' << w.d << '\n';
  for (Site s : c.sites()) out << s.m << ' ' << s.n << '\n';
}

Configuration read_configuration(std::istream& in) {
  std::string line;
  std::optional<Configuration> c;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string first;
    if (!(fields >> first) || first[0] == '#') continue;
    auto bad = [&] {
      return std::invalid_argument("configuration line " + std::to_string(line_no) + ": " + line);
    };
    if (!c) {
      int a, b, cc, d;
      if (first != "window" || !(fields >> a >> b >> cc >> d)) throw bad();
      c.emplace(Rect::make(a, b, cc, d));
      continue;
    }
    int m = 0, n = 0;
    try {
      m = std::stoi(first);
    } catch (const std::exception&) {
      throw bad();
    }
    if (!(fields >> n)) throw bad();
    std::string extra;
    if (fields >> extra) throw bad();
    if (!c->window().contains(Site{m, n})) throw bad();
    c->set({m, n});
  }
  if (!c) throw std::invalid_argument("configuration has no window line");
  return *c;
}

Json to_json(const Rect& r) { return Json{{"a", r.a}, {"b", r.b}, {"c", r.c}, {"d", r.d}}; }

Rect rect_from_json(const Json& j) {
  try {
    return Rect::make(j.at("a").get<int>(), j.at("b").get<int>(), j.at("c").get<int>(),
                      j.at("d").get<int>());
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad rectangle: ") + e.what());
  }
}

Json to_json(const Configuration& c) {
  Json sites = Json::array();
  for (Site s : c.sites()) sites.push_back({s.m, s.n});
  return Json{{"window", to_json(c.window())}, {"occupied", std::move(sites)}};
}

Configuration configuration_from_json(const Json& j) {
  try {
    Configuration c(rect_from_json(j.at("window")));
    for (const auto& s : j.at("occupied")) {
      Site site{s.at(0).get<int>(), s.at(1).get<int>()};
      if (!c.window().contains(site)) throw std::invalid_argument("occupied site outside window");
      c.set(site);
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad configuration: ") + e.what());
  }
}

Json to_json(const decomposition::Hierarchy& h) {
  Json vertices = Json::array();
  for (std::size_t i = 0; i < h.vertices.size(); ++i) {
    const auto& v = h.vertices[i];
    vertices.push_back({{"id", i},
                        {"kind", decomposition::to_string(v.kind)},
                        {"label", to_json(v.label)},
                        {"parent", v.parent},
                        {"children", v.children}});
  }
  return Json{{"precision", h.precision}, {"depth", h.depth()}, {"vertices", std::move(vertices)}};
}

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

std::string format_dims(const Rect& r) {
  std::string s = std::to_string(r.cols()) + "x" + std::to_string(r.rows());
  if (r.a != 0 || r.c != 0) s += "@" + std::to_string(r.a) + "," + std::to_string(r.c);
  return s;
}

Json to_json(const montecarlo::Estimate& e) {
  return Json{{"event", e.label},         {"p", e.p},
              {"dims", format_dims(e.region)}, {"region", to_json(e.region)},
              {"trials", e.trials},       {"successes", e.successes},
              {"p_hat", e.p_hat},         {"ci_low", e.ci_low},
              {"ci_high", e.ci_high},     {"seed", e.seed}};
}

std::string estimate_csv_header() { return "event,p,dims,trials,p_hat,ci_low,ci_high,seed"; }

std::string estimate_csv_row(const montecarlo::Estimate& e) {
  std::ostringstream out;
  out << e.label << ',' << format_real(e.p) << ',' << format_dims(e.region) << ',' << e.trials
      << ',' << format_real(e.p_hat) << ',' << format_real(e.ci_low) << ','
      << format_real(e.ci_high) << ',' << e.seed;
  return out.str();
}

Rect parse_rect(const std::string& text) {
  static const std::regex pattern(R"(^\s*(\d+)x(\d+)(?:@(-?\d+),(-?\d+))?\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) {
    throw std::invalid_argument("rectangle must look like WxH or WxH@a,c: " + text);
  }
  try {
    const int w = std::stoi(m[1]);
    const int h = std::stoi(m[2]);
    if (w < 1 || h < 1) throw std::invalid_argument("rectangle needs at least one site: " + text);
    Site origin{};
    if (m[3].matched) origin = {std::stoi(m[3]), std::stoi(m[4])};
    return Rect::sized(w, h, origin);
  } catch (const std::out_of_range&) {
    throw std::invalid_argument("rectangle coordinates out of range: " + text);
  }
}

}  // namespace abp
