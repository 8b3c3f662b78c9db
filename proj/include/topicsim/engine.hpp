#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "topicsim/graph.hpp"
#include "topicsim/kernels.hpp"
#include "topicsim/rng.hpp"

namespace topicsim {

// Diffusion parameters. Rates are events per unit time: inter-arrival gaps
// are exponential with mean 1/rate. prune_eps = 0 disables pruning entirely
// (reference mode for small runs).
struct SimConfig {
    double lambda1 = 1.0;  // topic arrival rate into the global list
    double lambda2 = 1.0;  // per-node activity rate
    double A = 1.0;        // adoption weight at age 0
    double alpha = 0.5;    // global decay rate
    double B = 1.0;        // instance weight at age 0
    double beta = 1.0;     // local decay rate
    double horizon = 100.0;
    double prune_eps = 1e-12;
    std::uint64_t seed = 1;
    std::uint64_t max_live_instances = 1ull << 26; // resource cap
    std::string kernel = "auto";                   // decay kernel lane

    void validate() const; // throws validation_error
};

struct GlobalTopic {
    std::int32_t topic_id;
    double birth_time;
    std::uint64_t seq;
};

struct Instance {
    double t;
    double w_norm; // normalized copy weight of the chosen topic at speak time
    std::uint64_t seq;
    std::int32_t topic;
    std::uint32_t node;
    bool adopted; // true: picked from the global list; false: copied
};

// Complete, totally ordered event log of one run; the single input to all
// analyses. Events are ordered by (t, seq) with seq unique across arrivals
// and instances.
struct EventTrace {
    SimConfig config;
    WsParams net;
    std::vector<GlobalTopic> arrivals; // topic_id == index
    std::vector<Instance> instances;
    std::uint64_t no_action_events = 0;
};

// Weight of a topic in the global list at time t: A e^{-alpha (t - birth)},
// or 0 once pruned below cfg.prune_eps. Throws validation_error if t
// precedes the topic's birth.
double adoption_weight(const GlobalTopic& topic, double t, const SimConfig& cfg);

// Topic of the node's most recent instance with create_time <= t (ties by
// seq: the later instance wins); nullopt if the node has not spoken by t.
std::optional<std::int32_t> speaking_topic(const EventTrace& trace,
                                           std::uint32_t node, double t);

struct TopicChoice {
    std::int32_t topic;
    double w_norm;
    bool adopted;
};

struct TopicProb {
    std::int32_t topic;
    double p;      // (adoption + copy weight) / c
    double w_norm; // copy weight / c
};

struct RunSummary {
    std::uint64_t arrivals = 0;
    std::uint64_t instances = 0;
    std::uint64_t no_action = 0;
};

class EventSink {
public:
    virtual ~EventSink() = default;
    virtual void on_arrival(const GlobalTopic&) {}
    virtual void on_instance(const Instance&) {}
    // Fired for every node activity (instance or no-action) with the
    // instantaneous normalizer c_node(t). Measurement hook; default ignores.
    virtual void on_activity(std::uint32_t /*node*/, double /*t*/, double /*c*/) {}
};

// Event-driven simulator. One pending event per node plus one for topic
// arrivals; after firing, each stream redraws its next exponential gap, which
// realizes independent Poisson processes. A single run is single-threaded and
// fully deterministic for fixed (net, cfg).
class Simulator {
public:
    Simulator(const Network& net, SimConfig cfg);

    const SimConfig& config() const { return cfg_; }
    const char* kernel_name() const { return kern_.name; }

    // --- state seeding (tests, warm starts) ---------------------------------
    // Topics must be injected in nondecreasing birth order; instances must not
    // precede their topic's birth.
    std::int32_t inject_topic(double birth);
    void inject_instance(std::uint32_t node, std::int32_t topic, double t);

    // --- weight queries ------------------------------------------------------
    // Sum of B e^{-beta (t - create)} over unpruned instances of the topic
    // held by neighbors of the node. The node's own instances are excluded.
    double copy_weight(std::uint32_t node, std::int32_t topic, double t) const;

    // Per-topic normalized probabilities for a node activity at time t, in
    // sampling order. Empty when every weight is zero.
    std::vector<TopicProb> distribution(std::uint32_t node, double t);

    // Samples a topic with probability (adoption + copy)/c. Consumes one
    // uniform draw when any weight is live; returns nullopt (no action)
    // otherwise. Within the chosen topic, adoption vs copy provenance is
    // resolved by where the draw lands in the topic's two weight segments.
    std::optional<TopicChoice> choose_topic(std::uint32_t node, double t);

    // --- full run ------------------------------------------------------------
    RunSummary run(EventSink& sink);

    std::uint64_t live_instances() const { return live_instances_; }

private:
    struct LocalItem {
        double t;
        std::int32_t topic;
    };
    struct LocalList {
        std::vector<LocalItem> items;
        std::size_t head = 0; // items before head are expired
    };

    struct WeightState; // scratch for one weight evaluation

    void expire(LocalList& list, double t);
    void gather_weights(std::uint32_t node, double t, WeightState& ws);
    std::optional<TopicChoice> sample_from(const WeightState& ws);
    void append_instance(std::uint32_t node, std::int32_t topic, double t,
                         double w_norm);

    const Network& net_;
    SimConfig cfg_;
    kernels::Table kern_;
    Rng rng_;

    double adopt_window_; // age beyond which a topic leaves the global list
    double inst_window_;  // age beyond which an instance is pruned

    std::vector<double> birth_;   // birth time per topic id
    std::size_t adopt_begin_ = 0; // first topic still in the adoption window
    std::vector<LocalList> lists_;
    std::uint64_t live_instances_ = 0;
    std::uint64_t seq_ = 0;

    bool ran_ = false;

    // reusable scratch
    std::vector<double> age_buf_, w_buf_, aw_buf_, cw_;
    std::vector<std::int32_t> topic_buf_, touched_;
    std::vector<std::uint32_t> slot_stamp_;
    std::vector<std::uint32_t> slot_of_;
    std::uint32_t stamp_ = 0;
};

// Convenience wrapper: full run collecting the trace in memory.
EventTrace simulate(const Network& net, const SimConfig& cfg);

// Streaming run (trace not retained).
RunSummary simulate_stream(const Network& net, const SimConfig& cfg, EventSink& sink);

} // namespace topicsim
