#include "wsls/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace wsls {

EventRecord apply_wsls(const Graph& g, Configuration& config, NodeId u,
                       NodeId v) {
  if (!g.has_edge(u, v))
    throw std::invalid_argument("apply_wsls: (u,v) is not an edge");
  return detail::apply_wsls_unchecked(config, u, v);
}

Simulation::Simulation(const Graph& g, Configuration init, std::uint64_t seed)
    : graph_(&g), state_{std::move(init), 0.0, 0, Rng(seed)} {
  if (state_.config.size() != g.node_count())
    throw std::invalid_argument("simulation: configuration size mismatch");
}

void Simulation::build_active() {
  active_.clear();
  active_pos_.assign(graph_->edge_count(), kNoPos);
  for (EdgeId e = 0; e < graph_->edge_count(); ++e) {
    const Edge& ed = graph_->edge(e);
    if (state_.config.action(ed.u) == Action::Defect ||
        state_.config.action(ed.v) == Action::Defect)
      set_active(e, true);
  }
  active_built_ = true;
}

void Simulation::set_active(EdgeId e, bool active) {
  const bool is_active = active_pos_[e] != kNoPos;
  if (active == is_active) return;
  if (active) {
    active_pos_[e] = static_cast<std::uint32_t>(active_.size());
    active_.push_back(e);
  } else {
    const std::uint32_t pos = active_pos_[e];
    const EdgeId last = active_.back();
    active_[pos] = last;
    active_pos_[last] = pos;
    active_.pop_back();
    active_pos_[e] = kNoPos;
  }
}

void Simulation::refresh_node(NodeId v) {
  for (EdgeId e : graph_->incident_edges(v)) {
    const Edge& ed = graph_->edge(e);
    set_active(e, state_.config.action(ed.u) == Action::Defect ||
                      state_.config.action(ed.v) == Action::Defect);
  }
}

void Simulation::after_event(const EventRecord& ev) {
  if (!active_built_ || ev.defector_delta == 0) return;
  if (ev.u_changed) refresh_node(ev.u);
  if (ev.v_changed) refresh_node(ev.v);
}

std::uint32_t Simulation::active_edge_count() {
  if (!active_built_) build_active();
  return static_cast<std::uint32_t>(active_.size());
}

double Simulation::next_event_time() {
  if (!pending_dt_) {
    const EdgeId m = graph_->edge_count();
    if (m == 0) throw std::invalid_argument("step_continuous: edgeless graph");
    pending_dt_ = state_.rng.exponential(static_cast<double>(m));
  }
  return state_.time + *pending_dt_;
}

EventRecord Simulation::commit_continuous_event() {
  const double t = next_event_time();
  const double dt = *pending_dt_;
  pending_dt_.reset();
  const auto e =
      static_cast<EdgeId>(state_.rng.uniform_index(graph_->edge_count()));
  const Edge& ed = graph_->edge(e);
  EventRecord ev = detail::apply_wsls_unchecked(state_.config, ed.u, ed.v);
  ev.edge = e;
  ev.dt = dt;
  state_.time = t;
  ++state_.steps;
  after_event(ev);
  return ev;
}

EventRecord Simulation::step_continuous() {
  next_event_time();
  return commit_continuous_event();
}

EventRecord Simulation::step_spedup() {
  pending_dt_.reset();
  if (!active_built_) build_active();
  if (active_.empty()) throw AbsorbedError();
  const auto idx = state_.rng.uniform_index(active_.size());
  const EdgeId e = active_[idx];
  const Edge& ed = graph_->edge(e);
  EventRecord ev = detail::apply_wsls_unchecked(state_.config, ed.u, ed.v);
  ev.edge = e;
  ++state_.steps;
  after_event(ev);
  return ev;
}

HittingResult run_to_cooperation(const Graph& g, const RunOptions& options,
                                 std::uint64_t seed) {
  HittingResult result;
  Simulation sim(g, init_all_defect(g), seed);

  if (options.mode == Mode::Continuous) {
    if (!(options.time_cap > 0.0))
      throw std::invalid_argument("run_to_cooperation: time cap must be > 0");
    auto grid = options.trace_times.begin();
    const auto grid_end = options.trace_times.end();
    auto flush = [&](double up_to) {
      while (grid != grid_end && *grid <= up_to) {
        result.trace.push_back({*grid, sim.config().defector_count()});
        ++grid;
      }
    };
    while (!sim.config().all_cooperating()) {
      const double t_next = sim.next_event_time();
      flush(std::min(t_next, options.time_cap));
      if (t_next > options.time_cap) {
        result.censored_at = options.time_cap;
        break;
      }
      sim.commit_continuous_event();
    }
    if (sim.config().all_cooperating()) {
      result.converged = true;
      result.t_c = sim.time();
      flush(options.time_cap);
    }
    result.steps = sim.steps();
    result.defectors_at_end = sim.config().defector_count();
    return result;
  }

  if (options.step_cap == 0)
    throw std::invalid_argument("run_to_cooperation: step cap must be > 0");
  auto grid = options.trace_steps.begin();
  const auto grid_end = options.trace_steps.end();
  auto flush = [&](std::uint64_t up_to) {
    while (grid != grid_end && *grid <= up_to) {
      result.trace.push_back(
          {static_cast<double>(*grid), sim.config().defector_count()});
      ++grid;
    }
  };
  flush(0);
  while (!sim.config().all_cooperating() && sim.steps() < options.step_cap) {
    sim.step_spedup();
    flush(sim.steps());
  }
  if (sim.config().all_cooperating()) {
    result.converged = true;
    flush(options.step_cap);
  } else {
    result.censored_at = static_cast<double>(options.step_cap);
  }
  result.steps = sim.steps();
  result.defectors_at_end = sim.config().defector_count();
  return result;
}

std::uint32_t star_defector_count(const CaterpillarLayout& layout,
                                  const Configuration& config,
                                  std::uint32_t star) {
  if (star >= layout.path_length)
    throw std::invalid_argument("star_defector_count: star index out of range");
  const auto& externals = layout.external_pairs[star];
  std::uint32_t count = 0;
  for (NodeId leaf : layout.leaves[star]) {
    if (leaf == externals[0] || leaf == externals[1]) continue;
    if (config.action(leaf) == Action::Defect) ++count;
  }
  return count;
}

TripletMap default_triplet_map(std::uint32_t star_count) {
  return [star_count](std::uint32_t i, std::uint32_t j)
             -> std::pair<std::uint32_t, std::uint32_t> {
    const std::int64_t max_star = static_cast<std::int64_t>(star_count) - 1;
    auto clamp = [max_star](std::int64_t s) {
      return static_cast<std::uint32_t>(
          std::clamp<std::int64_t>(s, 0, max_star));
    };
    const std::int64_t ii = i;
    if (j % 2 == 0) return {clamp(2 * ii - 2), clamp(2 * ii)};
    return {clamp(2 * ii - 1), clamp(2 * ii + 1)};
  };
}

ProjectionResult record_projection(const Graph& g,
                                   const CaterpillarLayout& layout,
                                   const ProjectionParams& params,
                                   std::uint64_t seed) {
  if (!(params.tau_block > 0.0))
    throw std::invalid_argument("record_projection: tau_block must be > 0");
  if (params.width == 0)
    throw std::invalid_argument("record_projection: width must be >= 1");

  const std::uint32_t n = layout.path_length;
  const std::uint32_t d = layout.degree;
  const TripletMap map =
      params.triplet_map ? params.triplet_map : default_triplet_map(n);

  for (std::uint32_t j = 0; j <= params.levels; ++j)
    for (std::uint32_t i = 1; i <= params.width; ++i) {
      if ((i + j) % 2 != 0) continue;
      const auto [a, b] = map(i, j);
      if (a >= n || b >= n || a == b)
        throw std::invalid_argument(
            "record_projection: triplet map must yield two distinct stars");
    }

  ProjectionResult out;
  out.width = params.width;
  out.levels = params.levels;
  out.bits.assign(static_cast<std::size_t>(params.levels + 1) * params.width,
                  0);

  Configuration init = params.initial ? *params.initial : init_all_defect(g);
  Simulation sim(g, std::move(init), seed);

  std::vector<std::uint8_t> sigma(n, 0);
  auto sample_level = [&](std::uint32_t j) {
    for (std::uint32_t s = 0; s < n; ++s)
      sigma[s] =
          sigma_threshold(star_defector_count(layout, sim.config(), s), d);
    for (std::uint32_t i = 1; i <= params.width; ++i) {
      if ((i + j) % 2 != 0) continue;
      const auto [a, b] = map(i, j);
      out.bits[static_cast<std::size_t>(j) * params.width + (i - 1)] =
          (sigma[a] || sigma[b]) ? 1 : 0;
    }
  };

  std::uint32_t next_level = 0;
  while (next_level <= params.levels) {
    if (sim.config().all_cooperating()) {
      for (; next_level <= params.levels; ++next_level)
        sample_level(next_level);
      break;
    }
    const double t_next = sim.next_event_time();
    while (next_level <= params.levels &&
           params.tau_block * next_level <= t_next) {
      sample_level(next_level);
      ++next_level;
    }
    if (next_level > params.levels) break;
    sim.commit_continuous_event();
  }
  return out;
}

}  // namespace wsls
