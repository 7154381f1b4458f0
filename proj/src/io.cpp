#include "hawkes/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hawkes {

using nlohmann::json;

json kernel_to_json(const Kernel& k) {
  if (k.shape() == Kernel::Shape::Exponential)
    return json{{"type", "exponential"}, {"a", k.param1()}, {"b", k.param2()}};
  return json{{"type", "box"}, {"c", k.param1()}, {"w", k.param2()}};
}

Kernel kernel_from_json(const json& j) {
  if (!j.is_object() || !j.contains("type"))
    throw std::invalid_argument("kernel config must be an object with a type");
  const std::string type = j.at("type").get<std::string>();
  if (type == "exponential")
    return Kernel::exponential(j.at("a").get<double>(),
                               j.at("b").get<double>());
  if (type == "box")
    return Kernel::box(j.at("c").get<double>(), j.at("w").get<double>());
  throw std::invalid_argument("unknown kernel type: " + type);
}

std::string sidecar_path(const std::string& csv_path) {
  return csv_path + ".meta.json";
}

void write_events_csv(const std::string& path, const EventData& data,
                      const std::optional<json>& config_echo) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "individual,timestamp\n";
  // global time order via index merge over the sorted per-individual lists
  const int n = data.population();
  std::vector<size_t> pos(n, 0);
  char buf[64];
  for (long long written = 0; written < data.total_events(); ++written) {
    int best = -1;
    double best_t = 0.0;
    for (int i = 0; i < n; ++i) {
      const auto& ts = data.times(i);
      if (pos[i] >= ts.size()) continue;
      if (best < 0 || ts[pos[i]] < best_t) {
        best = i;
        best_t = ts[pos[i]];
      }
    }
    ++pos[best];
    std::snprintf(buf, sizeof buf, "%.17g", best_t);
    out << best << ',' << buf << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
  out.close();

  json meta{{"n", data.population()},
            {"horizon", data.horizon()},
            {"seed", data.seed()},
            {"total_events", data.total_events()}};
  if (config_echo) meta["config"] = *config_echo;
  std::ofstream side(sidecar_path(path));
  if (!side)
    throw std::runtime_error("cannot open for writing: " + sidecar_path(path));
  side << meta.dump(2) << '\n';
}

std::optional<EventsMeta> read_sidecar(const std::string& csv_path) {
  std::ifstream in(sidecar_path(csv_path));
  if (!in) return std::nullopt;
  json j = json::parse(in);
  EventsMeta meta;
  meta.n = j.at("n").get<int>();
  meta.horizon = j.at("horizon").get<double>();
  meta.seed = j.at("seed").get<uint64_t>();
  meta.total_events = j.at("total_events").get<long long>();
  if (j.contains("config")) meta.config = j.at("config");
  return meta;
}

EventData read_events_csv(const std::string& path, std::optional<int> n,
                          std::optional<double> horizon) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open events file: " + path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("individual,timestamp", 0) != 0)
    throw std::runtime_error("events file missing expected header: " + path);

  std::vector<std::pair<int, double>> rows;
  size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      std::ostringstream os;
      os << path << ":" << line_no << ": expected individual,timestamp";
      throw std::runtime_error(os.str());
    }
    int idx = 0;
    const auto r1 = std::from_chars(line.data(), line.data() + comma, idx);
    if (r1.ec != std::errc{} || idx < 0) {
      std::ostringstream os;
      os << path << ":" << line_no << ": bad individual index";
      throw std::runtime_error(os.str());
    }
    errno = 0;
    char* end = nullptr;
    const double t = std::strtod(line.c_str() + comma + 1, &end);
    if (end == line.c_str() + comma + 1 || errno == ERANGE) {
      std::ostringstream os;
      os << path << ":" << line_no << ": bad timestamp";
      throw std::runtime_error(os.str());
    }
    rows.emplace_back(idx, t);
  }

  auto meta = read_sidecar(path);
  int pop = 0;
  if (n)
    pop = *n;
  else if (meta)
    pop = meta->n;
  else {
    for (const auto& [idx, t] : rows) pop = std::max(pop, idx + 1);
    if (pop == 0) throw std::runtime_error("empty events file and no sidecar");
  }
  double hor = 0.0;
  if (horizon)
    hor = *horizon;
  else if (meta)
    hor = meta->horizon;
  else
    for (const auto& [idx, t] : rows) hor = std::max(hor, t);
  if (!(hor > 0.0))
    throw std::runtime_error("cannot determine a positive horizon");

  std::vector<std::vector<double>> events(pop);
  for (const auto& [idx, t] : rows) {
    if (idx >= pop) {
      std::ostringstream os;
      os << "individual " << idx << " outside population of " << pop;
      throw std::runtime_error(os.str());
    }
    events[idx].push_back(t);
  }
  const uint64_t seed = meta ? meta->seed : 0;
  return EventData(pop, hor, std::move(events), seed);
}

}  // namespace hawkes
