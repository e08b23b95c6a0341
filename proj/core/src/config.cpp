#include "hemato/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>

#include "hemato/errors.hpp"

namespace hemato {
namespace {

struct Entry {
  std::string value;
  int line = 0;
};

using Section = std::map<std::string, Entry, std::less<>>;

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

const std::map<std::string, std::set<std::string>, std::less<>>& known_keys() {
  static const std::map<std::string, std::set<std::string>, std::less<>> keys{
      {"model", {"delta", "gamma", "tau", "mu", "k"}},
      {"hill", {"beta0", "G", "a", "K", "r"}},
      {"run",
       {"grid_step", "n_max", "sim_taus", "history_factor", "max_step", "sim_t_end", "sim_transient",
        "output_stride"}},
  };
  return keys;
}

const std::vector<std::pair<std::string, std::string>>& required_keys() {
  static const std::vector<std::pair<std::string, std::string>> req{
      {"model", "delta"}, {"model", "gamma"}, {"model", "mu"}, {"model", "k"}, {"hill", "beta0"},
      {"hill", "G"},      {"hill", "a"},      {"hill", "K"},   {"hill", "r"},
  };
  return req;
}

class Reader {
 public:
  Reader(std::map<std::string, Section, std::less<>> sections, std::string origin)
      : sections_(std::move(sections)), origin_(std::move(origin)) {}

  const Entry* find(std::string_view section, std::string_view key) const {
    auto s = sections_.find(section);
    if (s == sections_.end()) return nullptr;
    auto k = s->second.find(key);
    return k == s->second.end() ? nullptr : &k->second;
  }

  double number(std::string_view section, std::string_view key, double fallback) const {
    const Entry* e = find(section, key);
    return e ? parse_double(*e, key) : fallback;
  }

  int integer(std::string_view section, std::string_view key, int fallback) const {
    const Entry* e = find(section, key);
    if (!e) return fallback;
    int v = 0;
    const auto* end = e->value.data() + e->value.size();
    auto [ptr, ec] = std::from_chars(e->value.data(), end, v);
    if (ec != std::errc{} || ptr != end) fail(*e, key, "an integer");
    return v;
  }

  std::vector<double> list(std::string_view section, std::string_view key, std::vector<double> fallback) const {
    const Entry* e = find(section, key);
    if (!e) return fallback;
    std::vector<double> out;
    std::stringstream ss(e->value);
    std::string item;
    while (std::getline(ss, item, ',')) {
      Entry piece{std::string(trim(item)), e->line};
      out.push_back(parse_double(piece, key));
    }
    if (out.empty()) fail(*e, key, "a comma-separated list of numbers");
    return out;
  }

 private:
  double parse_double(const Entry& e, std::string_view key) const {
    double v = 0;
    const auto* end = e.value.data() + e.value.size();
    auto [ptr, ec] = std::from_chars(e.value.data(), end, v);
    if (ec != std::errc{} || ptr != end || e.value.empty()) fail(e, key, "a number");
    return v;
  }

  [[noreturn]] void fail(const Entry& e, std::string_view key, const char* expected) const {
    std::ostringstream os;
    os << origin_ << ":" << e.line << ": key '" << key << "' expects " << expected << ", got '" << e.value << "'";
    throw ConfigError(os.str());
  }

  std::map<std::string, Section, std::less<>> sections_;
  std::string origin_;
};

}  // namespace

Config parse_config_text(std::string_view text, std::string_view origin) {
  std::map<std::string, Section, std::less<>> sections;
  std::string current;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  auto where = [&](int line) { return std::string(origin) + ":" + std::to_string(line) + ": "; };

  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find_first_of("#;"); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where(line_no) + "malformed section header");
      current = std::string(trim(line.substr(1, line.size() - 2)));
      if (!known_keys().contains(current)) throw ConfigError(where(line_no) + "unknown section [" + current + "]");
      sections[current];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where(line_no) + "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (current.empty()) throw ConfigError(where(line_no) + "key '" + key + "' outside of any section");
    if (!known_keys().at(current).contains(key))
      throw ConfigError(where(line_no) + "unknown key '" + key + "' in [" + current + "]");
    if (sections[current].contains(key)) throw ConfigError(where(line_no) + "duplicate key '" + key + "'");
    sections[current][key] = Entry{value, line_no};
  }

  std::string missing;
  for (const auto& [sec, key] : required_keys()) {
    auto s = sections.find(sec);
    if (s == sections.end() || !s->second.contains(key)) missing += (missing.empty() ? "" : ", ") + sec + "." + key;
  }
  if (!missing.empty()) throw ConfigError(std::string(origin) + ": missing required keys: " + missing);

  Reader rd(std::move(sections), std::string(origin));
  Config cfg;
  cfg.text = std::string(text);
  ModelParams& p = cfg.params;
  p.delta = rd.number("model", "delta", 0);
  p.gamma = rd.number("model", "gamma", 0);
  p.tau = rd.number("model", "tau", 0.0);
  p.mu = rd.number("model", "mu", 0);
  p.k = rd.number("model", "k", 0);
  HillRates::Params hp;
  hp.beta0 = rd.number("hill", "beta0", 0);
  hp.G = rd.number("hill", "G", 0);
  hp.a = rd.number("hill", "a", 0);
  hp.K = rd.number("hill", "K", 0);
  hp.r = rd.number("hill", "r", 0);
  p.rates = std::make_shared<HillRates>(hp);

  RunOptions& run = cfg.run;
  run.grid_step = rd.number("run", "grid_step", run.grid_step);
  run.n_max = rd.integer("run", "n_max", run.n_max);
  run.sim_taus = rd.list("run", "sim_taus", run.sim_taus);
  run.history_factor = rd.number("run", "history_factor", run.history_factor);
  run.max_step = rd.number("run", "max_step", run.max_step);
  run.sim_t_end = rd.number("run", "sim_t_end", run.sim_t_end);
  run.sim_transient = rd.number("run", "sim_transient", run.sim_transient);
  run.output_stride = rd.integer("run", "output_stride", run.output_stride);

  std::string problems;
  for (const auto& v : validate(p)) problems += (problems.empty() ? "" : "; ") + v.message;
  if (!(run.grid_step > 0)) problems += (problems.empty() ? "" : "; ") + std::string("grid_step must be > 0");
  if (run.n_max < 0) problems += (problems.empty() ? "" : "; ") + std::string("n_max must be >= 0");
  if (run.output_stride < 1) problems += (problems.empty() ? "" : "; ") + std::string("output_stride must be >= 1");
  if (!problems.empty()) throw ConfigError(std::string(origin) + ": invalid parameters: " + problems);
  return cfg;
}

Config parse_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string() + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path.string());
}

std::string default_config_text() {
  return R"(# Hematopoiesis model with Hill-type feedback (rates in 1/day).
[model]
delta = 0.01
gamma = 0.2
mu = 0.02
k = 2.8
tau = 0

[hill]
beta0 = 0.5
G = 0.04
a = 6570
K = 0.0382
r = 7

[run]
grid_step = 0.005
n_max = 1
sim_taus = 0.5, 1.4, 2.8, 2.9
history_factor = 1.1
output_stride = 16
)";
}

}  // namespace hemato
