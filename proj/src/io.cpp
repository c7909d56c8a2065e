#include "moca/io.hpp"

#include <fstream>
#include <sstream>

namespace moca {

namespace {

std::vector<std::string> nonempty_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

std::vector<std::int64_t> parse_ints(const std::string& line, const char* what) {
  std::istringstream in(line);
  std::vector<std::int64_t> out;
  std::int64_t v;
  while (in >> v) out.push_back(v);
  std::string rest;
  if (in.fail() && !in.eof() && in >> rest)
    throw ConfigError(std::string("parse error: non-numeric token in ") + what);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << content;
}

}  // namespace

std::string serialize_instance(const ProblemInstance& instance) {
  std::ostringstream out;
  if (instance.is_knapsack()) {
    const KnapsackData& kp = instance.knapsack();
    out << kp.weights.size() << ' ' << instance.objectives() << ' ' << kp.capacity << '\n';
    for (std::size_t e = 0; e < kp.weights.size(); ++e) {
      out << kp.weights[e];
      for (std::int64_t p : kp.profits[e]) out << ' ' << p;
      out << '\n';
    }
  } else {
    const TspData& t = instance.tsp();
    out << instance.size() << ' ' << instance.objectives() << '\n';
    for (const auto& layer : t.coords)
      for (const auto& xy : layer) out << xy[0] << ' ' << xy[1] << '\n';
  }
  return out.str();
}

ProblemInstance parse_instance(const std::string& text) {
  std::vector<std::string> lines = nonempty_lines(text);
  if (lines.empty()) throw ConfigError("parse_instance: empty file");
  std::vector<std::int64_t> head = parse_ints(lines[0], "header");

  if (head.size() == 3) {  // knapsack: n d W
    int n = static_cast<int>(head[0]);
    int d = static_cast<int>(head[1]);
    KnapsackData kp;
    kp.capacity = head[2];
    if (static_cast<int>(lines.size()) != n + 1)
      throw ConfigError("parse_instance: expected " + std::to_string(n) + " item lines");
    for (int e = 1; e <= n; ++e) {
      std::vector<std::int64_t> row = parse_ints(lines[e], "item line");
      if (static_cast<int>(row.size()) != d + 1)
        throw ConfigError("parse_instance: item line needs weight plus " + std::to_string(d) + " profits");
      kp.weights.push_back(row[0]);
      kp.profits.emplace_back(row.begin() + 1, row.end());
    }
    return ProblemInstance(Sense::maximize, d, std::move(kp));
  }

  if (head.size() == 2) {  // tsp: n d, then d blocks of n coordinate lines
    int n = static_cast<int>(head[0]);
    int d = static_cast<int>(head[1]);
    if (static_cast<int>(lines.size()) != 1 + n * d)
      throw ConfigError("parse_instance: expected " + std::to_string(n * d) + " coordinate lines");
    std::vector<std::vector<std::array<std::int64_t, 2>>> coords(
        d, std::vector<std::array<std::int64_t, 2>>(static_cast<std::size_t>(n)));
    std::size_t cursor = 1;
    for (int i = 0; i < d; ++i)
      for (int v = 0; v < n; ++v) {
        std::vector<std::int64_t> xy = parse_ints(lines[cursor++], "coordinate line");
        if (xy.size() != 2) throw ConfigError("parse_instance: coordinate line needs two integers");
        coords[i][v] = {xy[0], xy[1]};
      }
    return ProblemInstance(Sense::minimize, d, TspData::from_coords(std::move(coords)));
  }

  throw ConfigError("parse_instance: header must be 'n d W' (knapsack) or 'n d' (tsp)");
}

void write_instance(const ProblemInstance& instance, const std::string& path) {
  write_file(path, serialize_instance(instance));
}

ProblemInstance read_instance(const std::string& path) { return parse_instance(read_file(path)); }

std::string serialize_solutions(const std::vector<SolutionRecord>& solutions, const ProblemInstance& instance) {
  std::ostringstream out;
  out << "# " << (instance.is_knapsack() ? "knapsack" : "tsp") << ' ' << instance.objectives() << ' '
      << to_string(instance.sense()) << '\n';
  for (const SolutionRecord& rec : solutions) {
    for (std::size_t i = 0; i < rec.encoding.size(); ++i) {
      if (i) out << ' ';
      out << rec.encoding[i];
    }
    out << '\n';
  }
  return out.str();
}

std::vector<SolutionRecord> parse_solutions(const std::string& text, const ProblemInstance& instance) {
  // every line after the header is one solution; an empty line is the
  // empty packing, so only the final newline is stripped
  std::vector<std::string> lines;
  std::string::size_type pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string::npos) {
      lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  if (lines.empty() || lines[0].empty() || lines[0][0] != '#')
    throw ConfigError("parse_solutions: missing '# problem d sense' header");
  {
    std::istringstream head(lines[0].substr(1));
    std::string problem, sense;
    int d = 0;
    if (!(head >> problem >> d >> sense)) throw ConfigError("parse_solutions: malformed header");
    bool matches = (problem == "knapsack") == instance.is_knapsack() && d == instance.objectives() &&
                   sense == to_string(instance.sense());
    if (!matches) throw ConfigError("parse_solutions: header does not match the instance");
  }
  std::vector<SolutionRecord> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::vector<std::int64_t> ints = parse_ints(lines[i], "solution line");
    Encoding enc(ints.begin(), ints.end());
    ObjectiveVector image = evaluate(instance, enc);  // throws FeasibilityError on bad encodings
    out.push_back(SolutionRecord{std::move(enc), std::move(image), {}});
  }
  return out;
}

void write_solutions(const std::vector<SolutionRecord>& solutions, const ProblemInstance& instance,
                     const std::string& path) {
  write_file(path, serialize_solutions(solutions, instance));
}

std::vector<SolutionRecord> read_solutions(const std::string& path, const ProblemInstance& instance) {
  return parse_solutions(read_file(path), instance);
}

}  // namespace moca
