#include "moca/bench.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "moca/algorithms.hpp"
#include "moca/io.hpp"
#include "moca/quality.hpp"

namespace moca {

namespace {

using nlohmann::json;

std::string format_double(double v) {
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

std::vector<ObjectiveVector> images_of(const std::vector<SolutionRecord>& records) {
  std::vector<ObjectiveVector> images;
  images.reserve(records.size());
  for (const SolutionRecord& rec : records) images.push_back(rec.image);
  return images;
}

struct PreparedInstance {
  ProblemInstance instance;
  std::string id;
  std::string type;
  int n = 0;
};

PreparedInstance prepare(const BenchInstanceSpec& spec) {
  if (spec.generated) {
    ProblemInstance inst = make_instance(*spec.generated);
    return PreparedInstance{std::move(inst), spec_id(*spec.generated), spec.generated->problem,
                            spec.generated->n};
  }
  ProblemInstance inst = read_instance(spec.file);
  std::string id = std::filesystem::path(spec.file).filename().string();
  std::string type = inst.is_knapsack() ? "knapsack-file" : "tsp-file";
  int n = static_cast<int>(inst.size());
  return PreparedInstance{std::move(inst), std::move(id), std::move(type), n};
}

// ---------------------------------------------------------------------------
// Minimal standalone SVG line plots.
// ---------------------------------------------------------------------------

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;  // sorted by x
};

std::string render_svg_plot(const std::string& title, const std::string& x_label, const std::string& y_label,
                            const std::vector<Series>& series) {
  const double width = 720, height = 480;
  const double ml = 70, mr = 170, mt = 40, mb = 50;
  const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                           "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f"};

  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  bool first = true;
  for (const Series& s : series)
    for (auto [x, y] : s.points) {
      if (first) {
        xmin = xmax = x;
        ymin = ymax = y;
        first = false;
      }
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1;
  double ypad = 0.05 * (ymax - ymin);
  ymin -= ypad;
  ymax += ypad;

  auto sx = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (width - ml - mr); };
  auto sy = [&](double y) { return height - mb - (y - ymin) / (ymax - ymin) * (height - mt - mb); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"16\">" << title
      << "</text>\n";
  out << "<line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\"" << width - mr << "\" y2=\"" << height - mb
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << height - mb
      << "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 5; ++t) {
    double xv = xmin + (xmax - xmin) * t / 5.0;
    double yv = ymin + (ymax - ymin) * t / 5.0;
    out << "<line x1=\"" << sx(xv) << "\" y1=\"" << height - mb << "\" x2=\"" << sx(xv) << "\" y2=\""
        << height - mb + 4 << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << sx(xv) << "\" y=\"" << height - mb + 18 << "\" text-anchor=\"middle\" font-size=\"11\">"
        << format_double(xv) << "</text>\n";
    out << "<line x1=\"" << ml - 4 << "\" y1=\"" << sy(yv) << "\" x2=\"" << ml << "\" y2=\"" << sy(yv)
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << ml - 8 << "\" y=\"" << sy(yv) + 4 << "\" text-anchor=\"end\" font-size=\"11\">"
        << format_double(yv) << "</text>\n";
  }
  out << "<text x=\"" << (ml + width - mr) / 2 << "\" y=\"" << height - 10
      << "\" text-anchor=\"middle\" font-size=\"12\">" << x_label << "</text>\n";
  out << "<text x=\"18\" y=\"" << (mt + height - mb) / 2 << "\" text-anchor=\"middle\" font-size=\"12\" "
      << "transform=\"rotate(-90 18 " << (mt + height - mb) / 2 << ")\">" << y_label << "</text>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* color = palette[i % (sizeof(palette) / sizeof(palette[0]))];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (auto [x, y] : series[i].points) out << sx(x) << ',' << sy(y) << ' ';
    out << "\"/>\n";
    for (auto [x, y] : series[i].points)
      out << "<circle cx=\"" << sx(x) << "\" cy=\"" << sy(y) << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
    double ly = mt + 16.0 * static_cast<double>(i);
    out << "<line x1=\"" << width - mr + 10 << "\" y1=\"" << ly << "\" x2=\"" << width - mr + 30 << "\" y2=\"" << ly
        << "\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
    out << "<text x=\"" << width - mr + 35 << "\" y=\"" << ly + 4 << "\" font-size=\"11\">" << series[i].label
        << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

void write_metric_plot(const std::vector<BenchRecord>& records, const std::string& metric, const std::string& path) {
  // series per (type, algorithm, epsilon); each point is the average over
  // instances and repetitions at one n
  std::map<std::string, std::map<int, std::pair<double, int>>> acc;
  for (const BenchRecord& rec : records) {
    if (rec.status != "ok") continue;
    double value;
    if (metric == "runtime_ms") {
      value = rec.runtime_ms;
    } else if (metric == "indicator") {
      if (rec.indicator.empty()) continue;
      value = std::stod(rec.indicator);
    } else {
      if (rec.cardinality_ratio.empty()) continue;
      value = std::stod(rec.cardinality_ratio);
    }
    std::string key = rec.type + " " + rec.algorithm + (rec.epsilon.empty() ? "" : " eps=" + rec.epsilon);
    auto& cell = acc[key][rec.n];
    cell.first += value;
    cell.second += 1;
  }
  std::vector<Series> series;
  for (auto& [label, by_n] : acc) {
    Series s;
    s.label = label;
    for (auto& [n, cell] : by_n) s.points.emplace_back(n, cell.first / cell.second);
    series.push_back(std::move(s));
  }
  std::ofstream out(path, std::ios::binary);
  out << render_svg_plot(metric + " vs n", "n", metric, series);
}

}  // namespace

BenchConfig BenchConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open bench config '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

BenchConfig BenchConfig::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("bench config: ") + e.what());
  }
  BenchConfig cfg;
  for (const json& item : j.at("instances")) {
    BenchInstanceSpec spec;
    if (item.contains("file")) {
      spec.file = item.at("file").get<std::string>();
    } else {
      GeneratorSpec gen;
      gen.problem = item.at("problem").get<std::string>();
      gen.n = item.at("n").get<int>();
      gen.d = item.value("d", 3);
      gen.seed = item.at("seed").get<std::uint64_t>();
      spec.generated = gen;
    }
    cfg.instances.push_back(std::move(spec));
  }
  if (j.contains("algorithms")) cfg.algorithms = j.at("algorithms").get<std::vector<std::string>>();
  if (j.contains("epsilons")) {
    cfg.epsilons.clear();
    for (const json& e : j.at("epsilons"))
      cfg.epsilons.push_back(e.is_string() ? e.get<std::string>() : format_double(e.get<double>()));
  }
  cfg.repetitions = j.value("repetitions", 1);
  if (j.contains("time_budget_ms")) cfg.time_budget_ms = j.at("time_budget_ms").get<std::int64_t>();
  cfg.compute_reference = j.value("reference", std::string("auto")) != "skip";
  cfg.knapsack_oracle = j.value("knapsack_oracle", cfg.knapsack_oracle);
  cfg.tsp_oracle = j.value("tsp_oracle", cfg.tsp_oracle);
  cfg.knapsack_reference_oracle = j.value("knapsack_reference_oracle", cfg.knapsack_reference_oracle);
  cfg.tsp_reference_oracle = j.value("tsp_reference_oracle", cfg.tsp_reference_oracle);
  cfg.grid_key_budget = j.value("grid_key_budget", cfg.grid_key_budget);
  cfg.out_dir = j.value("out_dir", cfg.out_dir);
  return cfg;
}

std::string bench_csv_header() {
  return "# moca-bench-csv v1\n"
         "instance,n,type,algorithm,epsilon,runtime_ms,oracle_calls,solution_count,indicator,"
         "reference_count,cardinality_ratio,status\n";
}

std::string render_csv(const std::vector<BenchRecord>& records) {
  std::ostringstream out;
  out << bench_csv_header();
  for (const BenchRecord& r : records) {
    out << r.instance_id << ',' << r.n << ',' << r.type << ',' << r.algorithm << ',' << r.epsilon << ','
        << format_double(r.runtime_ms) << ',' << r.oracle_calls << ',' << r.solution_count << ',' << r.indicator
        << ',' << r.reference_count << ',' << r.cardinality_ratio << ',' << r.status << '\n';
  }
  return out.str();
}

std::vector<BenchRecord> run_bench(const BenchConfig& config) {
  std::vector<BenchRecord> records;

  for (const BenchInstanceSpec& spec : config.instances) {
    PreparedInstance prep = prepare(spec);
    const ProblemInstance& instance = prep.instance;
    bool knapsack = instance.is_knapsack();
    auto oracle = make_oracle(knapsack ? config.knapsack_oracle : config.tsp_oracle);
    auto reference_oracle = make_oracle(knapsack ? config.knapsack_reference_oracle : config.tsp_reference_oracle);

    // Reference set: filtered exact dual outer-approximation output.
    std::vector<ObjectiveVector> reference_images;
    bool have_reference = false;
    if (config.compute_reference) {
      try {
        RunOptions opts;
        if (config.time_budget_ms)
          opts.deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(*config.time_budget_ms);
        auto ref = filter_redundant(dual_benson_exact(instance, *reference_oracle, opts), instance.sense());
        reference_images = images_of(ref);
        have_reference = true;
      } catch (const ResourceError&) {
        // reference infeasible at this size: indicator columns stay empty
      }
    }

    auto quality_columns = [&](BenchRecord& rec) {
      if (!have_reference) return;
      rec.reference_count = reference_images.size();
      rec.cardinality_ratio =
          format_double(static_cast<double>(rec.solution_count) / static_cast<double>(reference_images.size()));
    };

    for (const std::string& algorithm : config.algorithms) {
      if (algorithm == "benson-exact") {
        BenchRecord rec;
        rec.instance_id = prep.id;
        rec.n = prep.n;
        rec.type = prep.type;
        rec.algorithm = algorithm;
        try {
          RunOptions opts;
          if (config.time_budget_ms)
            opts.deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(*config.time_budget_ms);
          reference_oracle->reset_call_count();
          auto t0 = std::chrono::steady_clock::now();
          auto sols = filter_redundant(dual_benson_exact(instance, *reference_oracle, opts), instance.sense());
          rec.runtime_ms =
              std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
          rec.oracle_calls = reference_oracle->call_count();
          rec.solution_count = sols.size();
          rec.status = "ok";
          if (have_reference) {
            auto report = convex_indicator(images_of(sols), reference_images, instance.sense(),
                                           instance.objectives());
            rec.indicator = format_double(report.value.to_double());
          }
          quality_columns(rec);
        } catch (const TimeoutError&) {
          rec.status = "timeout";
        } catch (const ResourceError&) {
          rec.status = "skipped";
        }
        records.push_back(std::move(rec));
        continue;
      }

      for (const std::string& eps_text : config.epsilons) {
        Rational epsilon = Rational::parse(eps_text);
        for (int rep = 0; rep < config.repetitions; ++rep) {
          BenchRecord rec;
          rec.instance_id = prep.id;
          rec.n = prep.n;
          rec.type = prep.type;
          rec.algorithm = algorithm;
          rec.epsilon = eps_text;
          try {
            RunOptions opts;
            opts.grid_key_budget = config.grid_key_budget;
            if (config.time_budget_ms)
              opts.deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(*config.time_budget_ms);
            ConvexApproxResult result;
            if (algorithm == "oaa") {
              result = oaa(instance, *oracle, epsilon, opts);
            } else if (algorithm == "grid") {
              result = grid_algorithm(instance, *oracle, epsilon, opts);
            } else {
              throw ConfigError("bench: unknown algorithm '" + algorithm + "'");
            }
            rec.runtime_ms = result.wall_time.count();
            rec.oracle_calls = result.oracle_calls;
            rec.solution_count = result.solutions.size();
            rec.status = "ok";
            if (have_reference) {
              auto report = convex_indicator(images_of(result.solutions), reference_images, instance.sense(),
                                             instance.objectives());
              rec.indicator = format_double(report.value.to_double());
            }
            quality_columns(rec);
          } catch (const TimeoutError&) {
            rec.status = "timeout";
          } catch (const ResourceError&) {
            rec.status = "skipped";
          }
          records.push_back(std::move(rec));
        }
      }
    }
  }
  return records;
}

void write_bench_outputs(const BenchConfig& config, const std::vector<BenchRecord>& records) {
  std::filesystem::create_directories(config.out_dir);
  {
    std::ofstream out(std::filesystem::path(config.out_dir) / "bench.csv", std::ios::binary);
    out << render_csv(records);
  }
  write_metric_plot(records, "runtime_ms", (std::filesystem::path(config.out_dir) / "runtime_vs_n.svg").string());
  write_metric_plot(records, "indicator", (std::filesystem::path(config.out_dir) / "indicator_vs_n.svg").string());
  write_metric_plot(records, "cardinality_ratio",
                    (std::filesystem::path(config.out_dir) / "cardinality_ratio_vs_n.svg").string());
}

}  // namespace moca
