#ifndef HAWKES_IO_HPP
#define HAWKES_IO_HPP

#include <optional>
#include <string>

#include <json.hpp>

#include "hawkes/events.hpp"
#include "hawkes/kernel.hpp"

namespace hawkes {

// Kernel config form: {"type": "exponential", "a": .., "b": ..} or
// {"type": "box", "c": .., "w": ..}. Unknown types or missing fields throw.
nlohmann::json kernel_to_json(const Kernel& k);
Kernel kernel_from_json(const nlohmann::json& j);

// Events on disk: CSV with header "individual,timestamp", one row per event
// in global time order, timestamps printed with 17 significant digits so the
// doubles round-trip exactly. A sidecar at <path>.meta.json carries the
// population size, horizon, seed, total_events and (when the writer knows
// them) the generating config, so a reader does not have to infer the
// population from the largest index seen.
struct EventsMeta {
  int n = 0;
  double horizon = 0.0;
  uint64_t seed = 0;
  long long total_events = 0;
  std::optional<nlohmann::json> config;  // writer-defined echo, optional
};

std::string sidecar_path(const std::string& csv_path);

void write_events_csv(const std::string& path, const EventData& data,
                      const std::optional<nlohmann::json>& config_echo);

// Reads events back. Population/horizon resolution order: explicit argument,
// else sidecar, else inferred (max index + 1, max timestamp). Inference is
// only a fallback: individuals with no events would shrink the population.
EventData read_events_csv(const std::string& path,
                          std::optional<int> n = std::nullopt,
                          std::optional<double> horizon = std::nullopt);

std::optional<EventsMeta> read_sidecar(const std::string& csv_path);

}  // namespace hawkes

#endif
