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

// Command-line front end for the abp library.

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "abp/analytic.hpp"
#include "abp/decomposition.hpp"
#include "abp/events.hpp"
#include "abp/lattice.hpp"
#include "abp/montecarlo.hpp"
#include "abp/serialize.hpp"
#include "abp/variational.hpp"

namespace {

using abp::Json;
using abp::format_real;

struct Common {
  std::string out;
  std::string format = "csv";
  int threads = 0;
};

// Everything a command writes. CSV commands fill `csv`; every command fills
// `json`.
struct Output {
  std::ostringstream csv;
  Json json = Json::object();
};

struct Command {
  CLI::App* app = nullptr;
  std::function<void(Output&)> run;
};

abp::Configuration load_configuration(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open configuration file: " + path);
  if (path.size() > 5 && path.substr(path.size() - 5) == ".json") {
    try {
      return abp::configuration_from_json(Json::parse(in));
    } catch (const Json::parse_error& e) {
      throw std::invalid_argument(std::string("bad JSON configuration: ") + e.what());
    }
  }
  return abp::read_configuration(in);
}

abp::Site parse_site(const std::string& text) {
  std::istringstream in(text);
  abp::Site s;
  char comma = 0;
  if (!(in >> s.m >> comma >> s.n) || comma != ',' || !in.eof()) {
    throw std::invalid_argument("site must look like m,n: " + text);
  }
  return s;
}

Json echo(const std::string& name, const CLI::App& sub) {
  Json config = Json::object();
  config["tool"] = "abp";
  config["version"] = abp::kVersion;
  config["schema"] = abp::kSchemaVersion;
  config["command"] = name;
  for (const CLI::Option* opt : sub.get_options()) {
    const std::string key = opt->get_single_name();
    if (key == "help") continue;
    if (opt->count() > 0) {
      const auto& results = opt->results();
      config[key] = results.size() == 1 ? Json(results.front()) : Json(results);
    } else {
      config[key] = opt->get_default_str();
    }
  }
  return config;
}

void write_configuration_csv(std::ostream& out, const abp::Configuration& c) {
  const abp::Rect& w = c.window();
  out << "window," << w.a << ',' << w.b << ',' << w.c << ',' << w.d << '\n' << "m,n\n";
  for (abp::Site s : c.sites()) out << s.m << ',' << s.n << '\n';
}

abp::EventSpec make_event(const std::string& name, int crossing_k, const std::string& inner) {
  abp::EventSpec e;
  e.name = name;
  e.crossing.k = crossing_k;
  if (!inner.empty()) e.inner = abp::parse_rect(inner);
  if (!abp::is_known_event(name)) throw std::invalid_argument("unknown event: " + name);
  return e;
}

std::string join_events() {
  std::string s;
  for (auto name : abp::event_names()) s += (s.empty() ? "" : ", ") + std::string(name);
  return s;
}

int run(int argc, char** argv);

int run_batch(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot open batch file: " << path << '\n';
    return 2;
  }
  std::string line;
  int worst = 0;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
    std::vector<std::string> words{"abp"};
    try {
      const Json doc = Json::parse(line);
      words.push_back(doc.at("command").get<std::string>());
      for (const auto& [key, value] : doc.items()) {
        if (key == "command") continue;
        const Json items = value.is_array() ? value : Json::array({value});
        for (const auto& item : items) {
          words.push_back("--" + key);
          words.push_back(item.is_string() ? item.get<std::string>() : item.dump());
        }
      }
    } catch (const Json::exception& e) {
      std::cerr << "bad batch line: " << e.what() << '\n';
      worst = std::max(worst, 1);
      continue;
    }
    std::vector<char*> args;
    for (auto& w : words) args.push_back(w.data());
    worst = std::max(worst, run(int(args.size()), args.data()));
  }
  return worst;
}

int run(int argc, char** argv) {
  CLI::App app{"Anisotropic bootstrap percolation toolkit", "abp"};
  app.set_version_flag("--version", abp::kVersion);
  app.require_subcommand(0, 1);
  std::string batch;
  app.add_option("--batch", batch, "File with one JSON command object per line");

  Common common;
  std::map<std::string, Command> commands;
  auto add = [&](const std::string& name, const std::string& help) -> CLI::App* {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->option_defaults()->always_capture_default();
    sub->add_option("--out", common.out, "Output path (default stdout)");
    sub->add_option("--format", common.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--threads", common.threads, "Worker threads (0 = default)")
        ->check(CLI::NonNegativeNumber);
    commands[name].app = sub;
    return sub;
  };

  // closure
  std::string config_path;
  int reach = 2;
  {
    CLI::App* sub = add("closure", "Closure of a configuration");
    sub->add_option("--config", config_path, "Configuration file (text or .json)")->required();
    sub->add_option("--reach", reach, "Horizontal reach k of the neighborhood")->check(CLI::PositiveNumber);
    commands["closure"].run = [&](Output& out) {
      const auto spec = abp::NeighborhoodSpec::anisotropic(reach);
      const abp::Configuration c = abp::closure(load_configuration(config_path), spec);
      write_configuration_csv(out.csv, c);
      out.json["closure"] = abp::to_json(c);
    };
  }

  // time-to-origin
  double p = 0.1;
  std::string rect_text = "11x11@-5,-5";
  std::uint64_t seed = 1;
  std::string target_text = "0,0";
  {
    CLI::App* sub = add("time-to-origin", "First time a target site is occupied");
    sub->add_option("--config", config_path, "Configuration file; sampled when absent");
    sub->add_option("--p", p, "Occupation probability when sampling")->check(CLI::Range(0.0, 1.0));
    sub->add_option("--rect", rect_text, "Sampling window WxH[@a,c]");
    sub->add_option("--seed", seed, "Random seed");
    sub->add_option("--target", target_text, "Target site m,n");
    sub->add_option("--reach", reach, "Horizontal reach k")->check(CLI::PositiveNumber);
    commands["time-to-origin"].run = [&](Output& out) {
      const auto spec = abp::NeighborhoodSpec::anisotropic(reach);
      abp::Configuration c;
      if (!config_path.empty()) {
        c = load_configuration(config_path);
      } else {
        abp::Stream stream(seed, 0);
        c = abp::montecarlo::sample_configuration(abp::parse_rect(rect_text), p, stream);
      }
      const abp::Site target = parse_site(target_text);
      if (!c.window().contains(target)) throw std::invalid_argument("target outside the window");
      const std::int64_t t = abp::time_to_occupy(c, spec, target);
      const std::string shown = t == abp::kNever ? "NEVER" : std::to_string(t);
      out.csv << "m,n,time\n" << target.m << ',' << target.n << ',' << shown << '\n';
      out.json["target"] = {target.m, target.n};
      out.json["time"] = shown;
    };
  }

  // estimate / exact
  std::string event = "horiz_traversable";
  std::string inner_text;
  int crossing_k = 2;
  std::int64_t trials = 1000;
  auto event_options = [&](CLI::App* sub) {
    sub->add_option("--event", event, "Event name: " + join_events());
    sub->add_option("--p", p, "Occupation probability")->check(CLI::Range(0.0, 1.0));
    sub->add_option("--rect", rect_text, "Region WxH[@a,c]");
    sub->add_option("--inner", inner_text, "Inner rectangle for I and A_k");
    sub->add_option("--crossing-k", crossing_k, "Strip height k for crossing events")
        ->check(CLI::PositiveNumber);
    sub->add_option("--reach", reach, "Horizontal reach k")->check(CLI::PositiveNumber);
  };
  {
    CLI::App* sub = add("estimate", "Monte Carlo event probability");
    event_options(sub);
    sub->add_option("--trials", trials, "Number of trials")->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed, "Random seed");
    commands["estimate"].run = [&](Output& out) {
      abp::montecarlo::TrialPlan plan;
      plan.p = p;
      plan.region = abp::parse_rect(rect_text);
      plan.event = make_event(event, crossing_k, inner_text);
      plan.trials = trials;
      plan.seed = seed;
      plan.spec = abp::NeighborhoodSpec::anisotropic(reach);
      plan.threads = common.threads;
      const auto e = abp::montecarlo::estimate_event(plan);
      out.csv << abp::estimate_csv_header() << '\n' << abp::estimate_csv_row(e) << '\n';
      out.json["estimates"] = Json::array({abp::to_json(e)});
    };
  }
  {
    CLI::App* sub = add("exact", "Exact event probability by enumeration");
    event_options(sub);
    commands["exact"].run = [&](Output& out) {
      const abp::Rect region = abp::parse_rect(rect_text);
      const double v = abp::montecarlo::exact_event_probability(
          region, p, make_event(event, crossing_k, inner_text), abp::NeighborhoodSpec::anisotropic(reach));
      out.csv << "event,p,dims,probability\n"
              << event << ',' << format_real(p) << ',' << abp::format_dims(region) << ','
              << format_real(v) << '\n';
      out.json["probability"] = v;
    };
  }

  // staged-growth
  int k0 = 1;
  double epsilon = 0.25;
  {
    CLI::App* sub = add("staged-growth", "Stage event frequencies of critical droplet growth");
    sub->add_option("--p", p, "Occupation probability")->check(CLI::Range(0.0, 1.0));
    sub->add_option("--k0", k0, "First schedule index")->check(CLI::PositiveNumber);
    sub->add_option("--trials", trials, "Trials per stage")->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed, "Random seed");
    sub->add_option("--epsilon", epsilon, "Stage geometry parameter")->check(CLI::Range(0.0, 1.0));
    commands["staged-growth"].run = [&](Output& out) {
      abp::montecarlo::StageOptions options;
      options.epsilon = epsilon;
      options.threads = common.threads;
      const auto stages = abp::montecarlo::staged_growth_experiment(p, k0, trials, seed, options);
      out.csv << "stage,n,dims,inner,feasible,note,trials,p_hat,ci_low,ci_high,lower_bound,"
                 "meets_bound,seed\n";
      Json rows = Json::array();
      for (const auto& s : stages) {
        const std::string inner = s.inner ? abp::format_dims(*s.inner) : "";
        const std::string bound = s.lower_bound ? format_real(*s.lower_bound) : "";
        const std::string meets = s.meets_bound ? (*s.meets_bound ? "true" : "false") : "";
        out.csv << s.name << ',' << s.n << ',' << abp::format_dims(s.region) << ',' << inner << ','
                << (s.feasible ? "true" : "false") << ',' << s.note << ',' << s.estimate.trials
                << ',' << format_real(s.estimate.p_hat) << ',' << format_real(s.estimate.ci_low)
                << ',' << format_real(s.estimate.ci_high) << ',' << bound << ',' << meets << ','
                << seed << '\n';
        Json row = abp::to_json(s.estimate);
        row["stage"] = s.name;
        row["n"] = s.n;
        row["inner"] = inner;
        row["feasible"] = s.feasible;
        row["note"] = s.note;
        row["lower_bound"] = s.lower_bound ? Json(*s.lower_bound) : Json();
        row["meets_bound"] = s.meets_bound ? Json(*s.meets_bound) : Json();
        rows.push_back(std::move(row));
      }
      out.json["stages"] = std::move(rows);
    };
  }

  // threshold
  std::vector<double> ps{0.3, 0.2, 0.15, 0.1};
  int box = 1024;
  {
    CLI::App* sub = add("threshold", "Time for the origin to be occupied in a finite box");
    sub->add_option("--p", ps, "Occupation probabilities")->check(CLI::Range(0.0, 1.0));
    sub->add_option("--box", box, "Box half width")->check(CLI::NonNegativeNumber);
    sub->add_option("--trials", trials, "Trials per p")->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed, "Random seed");
    sub->add_option("--reach", reach, "Horizontal reach k")->check(CLI::PositiveNumber);
    commands["threshold"].run = [&](Output& out) {
      out.csv << "p,box_half_width,trials,median,q1,q3,never_fraction,nu,seed\n";
      Json rows = Json::array();
      for (double q : ps) {
        const auto s = abp::montecarlo::threshold_statistic(
            q, box, trials, seed, common.threads, abp::NeighborhoodSpec::anisotropic(reach));
        out.csv << format_real(q) << ',' << box << ',' << trials << ',' << format_real(s.median)
                << ',' << format_real(s.q1) << ',' << format_real(s.q3) << ','
                << format_real(s.never_fraction) << ',' << format_real(s.nu) << ',' << seed << '\n';
        rows.push_back({{"p", q},
                        {"box_half_width", box},
                        {"trials", trials},
                        {"median", format_real(s.median)},
                        {"q1", format_real(s.q1)},
                        {"q3", format_real(s.q3)},
                        {"never_fraction", s.never_fraction},
                        {"nu", format_real(s.nu)},
                        {"seed", seed}});
      }
      out.json["thresholds"] = std::move(rows);
    };
  }

  // variational
  double T = 0.02;
  double dX = 0, dY = 0, X_max = 2.5;
  {
    CLI::App* sub = add("variational", "Minimal growth cost over rectangle sequences");
    sub->add_option("--p", p, "Occupation probability")->check(CLI::Range(0.0, 1.0));
    sub->add_option("--T", T, "Height cap per step")->check(CLI::PositiveNumber);
    sub->add_option("--dX", dX, "Grid step in X (0 = T/4)")->check(CLI::NonNegativeNumber);
    sub->add_option("--dY", dY, "Grid step in Y (0 = T/4)")->check(CLI::NonNegativeNumber);
    sub->add_option("--X-max", X_max, "Largest X on the grid")->check(CLI::NonNegativeNumber);
    commands["variational"].run = [&](Output& out) {
      auto pc = abp::variational::PathConstraints::with_default_grid(p, T);
      if (dX > 0) pc.grid_dX = dX;
      if (dY > 0) pc.grid_dY = dY;
      pc.X_max = X_max;
      const auto r = abp::variational::lambda_T(pc);
      const double limit = abp::variational::limit_integral(T);
      out.csv << "quantity,value\nlambda," << format_real(r.value) << "\nlimit_integral,"
              << format_real(limit) << "\n\n";
      abp::variational::write_path_csv(out.csv, r);
      Json path = Json::array();
      for (std::size_t n = 0; n < r.path.size(); ++n) {
        path.push_back({{"X", r.path[n].X}, {"Y", r.path[n].Y}, {"W", n == 0 ? 0.0 : r.terms[n - 1]}});
      }
      out.json["lambda"] = r.value;
      out.json["limit_integral"] = limit;
      out.json["path"] = std::move(path);
    };
  }

  // schedule
  {
    CLI::App* sub = add("schedule", "Rectangle growth schedule");
    sub->add_option("--p", p, "Occupation probability")->check(CLI::Range(0.0, 1.0));
    sub->add_option("--k0", k0, "First schedule index")->check(CLI::PositiveNumber);
    commands["schedule"].run = [&](Output& out) {
      out.csv << "n,width,height\n";
      Json rows = Json::array();
      for (const auto& s : abp::analytic::growth_schedule(p, k0)) {
        out.csv << s.n << ',' << s.width << ',' << s.height << '\n';
        rows.push_back({{"n", s.n}, {"width", s.width}, {"height", s.height}});
      }
      out.json["schedule"] = std::move(rows);
    };
  }

  // decompose
  bool check = false;
  {
    CLI::App* sub = add("decompose", "Disjoint spanning trace of a configuration");
    sub->add_option("--config", config_path, "Configuration file (text or .json)")->required();
    sub->add_flag("--check", check, "Verify the invariants after every step");
    sub->add_option("--reach", reach, "Horizontal reach k")->check(CLI::PositiveNumber);
    commands["decompose"].run = [&](Output& out) {
      const auto spec = abp::NeighborhoodSpec::anisotropic(reach);
      const abp::Configuration c = load_configuration(config_path);
      abp::decomposition::SpanningOptions options;
      options.check_invariants = check;
      const auto trace = abp::decomposition::disjoint_spanning(c, spec, options);
      if (check) abp::decomposition::verify_trace(trace, c, spec);
      out.csv << "step,merged,result,size,bounding,removed,live_count\n";
      Json steps = Json::array();
      for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const auto& st = trace.steps[i];
        const auto& set = trace.all_sets[std::size_t(st.result)];
        std::string merged, removed;
        for (int id : st.merged) merged += (merged.empty() ? "" : " ") + std::to_string(id);
        for (int id : st.removed) removed += (removed.empty() ? "" : " ") + std::to_string(id);
        const abp::Rect box_rect = abp::decomposition::bounding_rect(set.sites);
        out.csv << i + 1 << ',' << merged << ',' << st.result << ',' << set.sites.size() << ','
                << abp::format_dims(box_rect) << ',' << removed << ',' << st.live_count << '\n';
        steps.push_back({{"merged", st.merged},
                         {"result", st.result},
                         {"size", set.sites.size()},
                         {"bounding", abp::to_json(box_rect)},
                         {"removed", st.removed},
                         {"live_count", st.live_count}});
      }
      out.json["steps"] = std::move(steps);
      out.json["final_sets"] = trace.final_sets;
    };
  }

  // hierarchy
  int t = 1;
  {
    CLI::App* sub = add("hierarchy", "Hierarchy of precision t for a generator set");
    sub->add_option("--config", config_path, "Generator configuration (text or .json)")->required();
    sub->add_option("--t", t, "Precision")->check(CLI::PositiveNumber);
    sub->add_option("--reach", reach, "Horizontal reach k")->check(CLI::PositiveNumber);
    commands["hierarchy"].run = [&](Output& out) {
      const abp::Configuration c = load_configuration(config_path);
      const auto h =
          abp::decomposition::build_hierarchy(c.sites(), t, abp::NeighborhoodSpec::anisotropic(reach));
      out.csv << "id,kind,a,b,c,d,parent,children\n";
      for (std::size_t i = 0; i < h.vertices.size(); ++i) {
        const auto& v = h.vertices[i];
        std::string kids;
        for (int ch : v.children) kids += (kids.empty() ? "" : " ") + std::to_string(ch);
        out.csv << i << ',' << abp::decomposition::to_string(v.kind) << ',' << v.label.a << ','
                << v.label.b << ',' << v.label.c << ',' << v.label.d << ',' << v.parent << ','
                << kids << '\n';
      }
      out.json["hierarchy"] = abp::to_json(h);
      out.json["valid"] = abp::decomposition::validate_hierarchy(h, t);
    };
  }

  // verify-claim
  int claim_k = 2, claim_x = 4;
  bool strict = false;
  {
    CLI::App* sub = add("verify-claim", "Exhaustive check of the strip crossing claim");
    sub->add_option("--k", claim_k, "Strip height and neighborhood reach")->check(CLI::PositiveNumber);
    sub->add_option("--x", claim_x, "Strip spans columns 0..x")->check(CLI::NonNegativeNumber);
    sub->add_flag("--strict", strict, "Count only shared-neighborhood pairs as weakly connected");
    commands["verify-claim"].run = [&](Output& out) {
      const auto r = abp::montecarlo::verify_crossing_claim(
          claim_k, claim_x, abp::NeighborhoodSpec::anisotropic(claim_k), !strict);
      out.csv << "k,x,configurations,crossed,counterexamples\n"
              << r.k << ',' << r.x << ',' << r.configurations << ',' << r.crossed << ','
              << r.counterexamples << '\n';
      Json examples = Json::array();
      for (std::size_t i = 0; i < r.examples.size(); ++i) {
        out.csv << "\ncounterexample," << i << '\n';
        write_configuration_csv(out.csv, r.examples[i]);
        examples.push_back(abp::to_json(r.examples[i]));
      }
      out.json["report"] = {{"k", r.k},
                            {"x", r.x},
                            {"configurations", r.configurations},
                            {"crossed", r.crossed},
                            {"counterexamples", r.counterexamples},
                            {"examples", std::move(examples)}};
    };
  }

  // bounds
  std::int64_t bx = 10, by = 10;
  {
    CLI::App* sub = add("bounds", "Analytic traversability bounds for an x by y rectangle");
    sub->add_option("--p", p, "Occupation probability")->check(CLI::Range(0.0, 1.0));
    sub->add_option("--x", bx, "Columns (sites per line)")->check(CLI::PositiveNumber);
    sub->add_option("--y", by, "Rows (sites per column)")->check(CLI::PositiveNumber);
    sub->add_option("--epsilon", epsilon, "Slack in the exponential forms")->check(CLI::Range(0.0, 1.0));
    commands["bounds"].run = [&](Output& out) {
      const auto h = abp::analytic::horiz_traversable_bounds(p, bx, by, epsilon);
      const double exact = abp::analytic::no_triple_gap_exact(h.u, bx);
      std::vector<std::pair<std::string, double>> rows{
          {"column_occupancy", h.u},     {"alpha", abp::analytic::alpha(h.u)},
          {"horiz_lower", h.lower},      {"horiz_exact", exact},
          {"horiz_upper", h.upper},      {"horiz_exp_lower", h.exp_lower},
          {"horiz_exp_upper", h.exp_upper}, {"horiz_in_regime", h.in_regime ? 1.0 : 0.0}};
      const auto nb =
          abp::analytic::north_traversable_lower(p, int(std::min<std::int64_t>(bx, 1 << 30)), by);
      rows.push_back({"north_line_probability", nb.line_probability});
      rows.push_back({"north_lower", nb.value});
      rows.push_back({"north_exact_line", nb.exact ? 1.0 : 0.0});
      out.csv << "quantity,value\n";
      for (const auto& [name, value] : rows) {
        out.csv << name << ',' << format_real(value) << '\n';
        out.json[name] = value;
      }
    };
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (!batch.empty()) return run_batch(batch);
  if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    return 1;
  }
  const std::string name = app.get_subcommands().front()->get_name();
  const Command& command = commands.at(name);

  Output output;
  try {
    command.run(output);
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  const Json config = echo(name, *command.app);
  std::ostringstream text;
  if (common.format == "json") {
    Json doc = Json::object();
    doc["config"] = config;
    for (auto& [key, value] : output.json.items()) doc[key] = value;
    text << doc.dump(2) << '\n';
  } else {
    text << "# config " << config.dump() << '\n' << output.csv.str();
  }
  if (common.out.empty()) {
    std::cout << text.str();
  } else {
    std::ofstream file(common.out, std::ios::binary);
    if (!file) {
      std::cerr << "error: cannot write " << common.out << '\n';
      return 2;
    }
    file << text.str();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
