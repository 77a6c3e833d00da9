#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "wsls/graph.hpp"
#include "wsls/rng.hpp"

namespace wsls {

enum class Action : std::uint8_t { Cooperate = 0, Defect = 1 };

// Per-node action vector with an incrementally maintained defector count.
class Configuration {
 public:
  static Configuration all_defect(NodeId node_count) {
    Configuration c;
    c.actions_.assign(node_count, Action::Defect);
    c.defectors_ = node_count;
    return c;
  }
  static Configuration all_cooperate(NodeId node_count) {
    Configuration c;
    c.actions_.assign(node_count, Action::Cooperate);
    c.defectors_ = 0;
    return c;
  }

  Action action(NodeId v) const { return actions_[v]; }
  void set_action(NodeId v, Action a) {
    if (actions_[v] != a) {
      defectors_ += (a == Action::Defect) ? 1 : -1;
      actions_[v] = a;
    }
  }
  NodeId size() const { return static_cast<NodeId>(actions_.size()); }
  std::uint32_t defector_count() const { return defectors_; }
  bool all_cooperating() const { return defectors_ == 0; }

  std::uint32_t recount_defectors() const {
    std::uint32_t n = 0;
    for (Action a : actions_)
      if (a == Action::Defect) ++n;
    return n;
  }

 private:
  std::vector<Action> actions_;
  std::uint32_t defectors_ = 0;
};

inline Configuration init_all_defect(const Graph& g) {
  return Configuration::all_defect(g.node_count());
}

struct EventRecord {
  EdgeId edge = 0;
  NodeId u = 0;
  NodeId v = 0;
  double dt = 0.0;          // 0 in the sped-up chain
  int defector_delta = 0;   // 0, +1 or -2
  bool u_changed = false;
  bool v_changed = false;
};

// The four WSLS transitions on one edge:
//   (C,C)->(C,C)  (C,D)->(D,D)  (D,C)->(D,D)  (D,D)->(C,C)
// Throws std::invalid_argument when (u,v) is not an edge of g.
EventRecord apply_wsls(const Graph& g, Configuration& config, NodeId u,
                       NodeId v);

namespace detail {
// Same transition without the adjacency check; the steppers call this on
// edges taken from the graph's own edge list.
inline EventRecord apply_wsls_unchecked(Configuration& config, NodeId u,
                                        NodeId v) {
  EventRecord ev;
  ev.u = u;
  ev.v = v;
  const bool du = config.action(u) == Action::Defect;
  const bool dv = config.action(v) == Action::Defect;
  if (du && dv) {
    config.set_action(u, Action::Cooperate);
    config.set_action(v, Action::Cooperate);
    ev.defector_delta = -2;
    ev.u_changed = ev.v_changed = true;
  } else if (du != dv) {
    if (du) {
      config.set_action(v, Action::Defect);
      ev.v_changed = true;
    } else {
      config.set_action(u, Action::Defect);
      ev.u_changed = true;
    }
    ev.defector_delta = 1;
  }
  return ev;
}
}  // namespace detail

// Thrown when the sped-up chain is stepped in the absorbing all-C state.
struct AbsorbedError : std::logic_error {
  AbsorbedError() : std::logic_error("sped-up step on absorbed configuration") {}
};

struct SimState {
  Configuration config;
  double time = 0.0;
  std::uint64_t steps = 0;
  Rng rng;
};

// One replica of the IPD chain over a shared immutable graph. Continuous
// steps use the superposition form of the edge clocks: a global
// Exponential(|E|) waiting time followed by a uniform edge choice. Sped-up
// steps choose uniformly among edges with at least one defecting endpoint,
// tracked incrementally.
class Simulation {
 public:
  Simulation(const Graph& g, Configuration init, std::uint64_t seed);

  EventRecord step_continuous();
  EventRecord step_spedup();

  // Two-phase continuous stepping for left-continuous observers: peek the
  // next event time, sample, then commit. step_continuous() is the two
  // phases back to back.
  double next_event_time();
  EventRecord commit_continuous_event();

  const SimState& state() const { return state_; }
  const Configuration& config() const { return state_.config; }
  double time() const { return state_.time; }
  std::uint64_t steps() const { return state_.steps; }
  std::uint32_t active_edge_count();

 private:
  void build_active();
  void refresh_node(NodeId v);
  void set_active(EdgeId e, bool active);
  void after_event(const EventRecord& ev);

  const Graph* graph_;
  SimState state_;
  std::optional<double> pending_dt_;
  std::vector<EdgeId> active_;
  std::vector<std::uint32_t> active_pos_;
  bool active_built_ = false;

  static constexpr std::uint32_t kNoPos = std::numeric_limits<std::uint32_t>::max();
};

enum class Mode { Continuous, SpedUp };

struct RunOptions {
  Mode mode = Mode::Continuous;
  double time_cap = 0.0;        // continuous mode: cap on elapsed time
  std::uint64_t step_cap = 0;   // sped-up mode: cap on event count
  // Optional defector-count sampling grid (times or step counts per mode).
  std::vector<double> trace_times;
  std::vector<std::uint64_t> trace_steps;
};

struct TracePoint {
  double at = 0.0;  // time (continuous) or step count (sped-up)
  std::uint32_t defectors = 0;
};

struct HittingResult {
  bool converged = false;
  double t_c = 0.0;                  // continuous hitting time, if converged
  std::uint64_t steps = 0;           // events processed
  double censored_at = 0.0;          // the cap, when not converged
  std::uint32_t defectors_at_end = 0;
  std::vector<TracePoint> trace;
};

// Runs the chain from all-defect until absorption or the mode's cap.
// Deterministic given (graph, options, seed). Trace samples are
// left-continuous: a grid point records the state just before any event at
// that instant, and grid points past absorption record the all-C state.
HittingResult run_to_cooperation(const Graph& g, const RunOptions& options,
                                 std::uint64_t seed);

// Number of defecting leaves of a star, excluding the root and the two
// designated external vertices.
std::uint32_t star_defector_count(const CaterpillarLayout& layout,
                                  const Configuration& config,
                                  std::uint32_t star);

// sigma_d[N]: 1 iff N > d/4 - 2, evaluated exactly as 4N + 8 > d.
inline bool sigma_threshold(std::uint32_t n_defectors, std::uint32_t degree) {
  return 4 * n_defectors + 8 > degree;
}

// Maps a percolation-lattice node (i,j) to the two extremal star indices of
// its triplet.
using TripletMap =
    std::function<std::pair<std::uint32_t, std::uint32_t>(std::uint32_t i,
                                                          std::uint32_t j)>;

// Default map for n = 2*width+1 stars: (i,j) -> (2i-2, 2i) for even j and
// (2i-1, 2i+1) for odd j, clamped into [0, n-1]. Diagonal lattice
// neighbors then map to overlapping triplets.
TripletMap default_triplet_map(std::uint32_t star_count);

struct ProjectionParams {
  double tau_block = 0.0;     // continuous time per lattice level
  std::uint32_t levels = 0;   // T
  std::uint32_t width = 0;    // n' (lattice columns 1..n')
  TripletMap triplet_map;     // defaults to default_triplet_map
  std::optional<Configuration> initial;  // defaults to all-defect
};

// Space-time bit field s~ over the lattice {(i,j): 1<=i<=width, 0<=j<=levels,
// i+j even}; addressed via node(i,j).
struct ProjectionResult {
  std::uint32_t width = 0;
  std::uint32_t levels = 0;
  std::vector<std::uint8_t> bits;  // row-major: j * width + (i-1)

  bool is_lattice_node(std::uint32_t i, std::uint32_t j) const {
    return i >= 1 && i <= width && j <= levels && (i + j) % 2 == 0;
  }
  bool node(std::uint32_t i, std::uint32_t j) const {
    return bits[static_cast<std::size_t>(j) * width + (i - 1)] != 0;
  }
};

// Samples the chain at times j*tau_block, j = 0..levels, recording
// sigma_d[N(star a)] OR sigma_d[N(star b)] for the mapped star pair of each
// lattice node.
ProjectionResult record_projection(const Graph& g,
                                   const CaterpillarLayout& layout,
                                   const ProjectionParams& params,
                                   std::uint64_t seed);

}  // namespace wsls
