#include "topicsim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "topicsim/errors.hpp"

namespace topicsim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double prune_window(double amplitude, double rate, double eps) {
    if (eps <= 0.0)
        return kInf;
    return std::log(amplitude / eps) / rate; // negative when eps >= amplitude
}

} // namespace

void SimConfig::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw validation_error(std::string("sim: ") + name + " must be positive");
    };
    positive(lambda1, "lambda1");
    positive(lambda2, "lambda2");
    positive(A, "A");
    positive(alpha, "alpha");
    positive(B, "B");
    positive(beta, "beta");
    positive(horizon, "horizon");
    if (!(prune_eps >= 0.0) || !std::isfinite(prune_eps))
        throw validation_error("sim: prune_eps must be finite and >= 0");
    if (max_live_instances == 0)
        throw validation_error("sim: max_live_instances must be positive");
    kernels::resolve(kernel); // throws for unknown/unavailable lanes
}

double adoption_weight(const GlobalTopic& topic, double t, const SimConfig& cfg) {
    if (t < topic.birth_time)
        throw validation_error("adoption_weight: t precedes topic birth");
    const double w = cfg.A * std::exp(-cfg.alpha * (t - topic.birth_time));
    return w < cfg.prune_eps ? 0.0 : w;
}

std::optional<std::int32_t> speaking_topic(const EventTrace& trace,
                                           std::uint32_t node, double t) {
    std::optional<std::int32_t> current;
    for (const Instance& inst : trace.instances) {
        if (inst.t > t)
            break;
        if (inst.node == node)
            current = inst.topic; // instances are (t, seq)-ordered: last wins
    }
    return current;
}

struct Simulator::WeightState {
    double c = 0.0;
    std::size_t win_begin = 0;
    std::size_t win_end = 0;
};

Simulator::Simulator(const Network& net, SimConfig cfg)
    : net_(net), cfg_(std::move(cfg)), kern_(kernels::resolve(cfg_.kernel)),
      rng_(cfg_.seed),
      adopt_window_(prune_window(cfg_.A, cfg_.alpha, cfg_.prune_eps)),
      inst_window_(prune_window(cfg_.B, cfg_.beta, cfg_.prune_eps)),
      lists_(net.node_count()) {
    cfg_.validate();
}

std::int32_t Simulator::inject_topic(double birth) {
    if (!birth_.empty() && birth < birth_.back())
        throw validation_error("inject_topic: births must be nondecreasing");
    birth_.push_back(birth);
    slot_of_.push_back(0);
    slot_stamp_.push_back(0);
    return static_cast<std::int32_t>(birth_.size()) - 1;
}

void Simulator::inject_instance(std::uint32_t node, std::int32_t topic, double t) {
    if (topic < 0 || static_cast<std::size_t>(topic) >= birth_.size())
        throw validation_error("inject_instance: unknown topic");
    if (t < birth_[static_cast<std::size_t>(topic)])
        throw validation_error("inject_instance: instance precedes topic birth");
    auto& list = lists_.at(node);
    if (!list.items.empty() && t < list.items.back().t)
        throw validation_error("inject_instance: times must be nondecreasing per node");
    list.items.push_back({t, topic});
    ++live_instances_;
}

void Simulator::expire(LocalList& list, double t) {
    auto& items = list.items;
    while (list.head < items.size() && t - items[list.head].t > inst_window_) {
        ++list.head;
        --live_instances_;
    }
    if (list.head > 1024 && list.head * 2 > items.size()) {
        items.erase(items.begin(),
                    items.begin() + static_cast<std::ptrdiff_t>(list.head));
        list.head = 0;
    }
}

double Simulator::copy_weight(std::uint32_t node, std::int32_t topic, double t) const {
    double sum = 0.0;
    for (std::uint32_t v : net_.adjacency().neighbors(node)) {
        const LocalList& list = lists_[v];
        for (std::size_t i = list.head; i < list.items.size(); ++i) {
            const LocalItem& item = list.items[i];
            if (item.t > t)
                break;
            const double age = t - item.t;
            if (item.topic == topic && age <= inst_window_)
                sum += cfg_.B * std::exp(-cfg_.beta * age);
        }
    }
    return sum;
}

void Simulator::gather_weights(std::uint32_t node, double t, WeightState& ws) {
    // Adoption window: contiguous because births are nondecreasing. Advancing
    // the begin pointer is how old topics leave the global list for good.
    while (adopt_begin_ < birth_.size() && t - birth_[adopt_begin_] > adopt_window_)
        ++adopt_begin_;
    ws.win_begin = adopt_begin_;
    ws.win_end = static_cast<std::size_t>(
        std::upper_bound(birth_.begin() + static_cast<std::ptrdiff_t>(adopt_begin_),
                         birth_.end(), t) -
        birth_.begin());

    const std::size_t wn = ws.win_end - ws.win_begin;
    age_buf_.resize(wn);
    for (std::size_t i = 0; i < wn; ++i)
        age_buf_[i] = t - birth_[ws.win_begin + i];
    aw_buf_.resize(wn);
    kern_.decay_weights(age_buf_.data(), wn, cfg_.alpha, cfg_.A, aw_buf_.data());

    // Copy weights: batch the ages of all live neighbor instances through the
    // decay kernel, then accumulate per topic in first-touch order.
    if (++stamp_ == 0) {
        std::fill(slot_stamp_.begin(), slot_stamp_.end(), 0u);
        stamp_ = 1;
    }
    age_buf_.clear();
    topic_buf_.clear();
    touched_.clear();
    cw_.clear();
    for (std::uint32_t v : net_.adjacency().neighbors(node)) {
        LocalList& list = lists_[v];
        expire(list, t);
        for (std::size_t i = list.head; i < list.items.size(); ++i) {
            const LocalItem& item = list.items[i];
            if (item.t > t)
                break;
            age_buf_.push_back(t - item.t);
            topic_buf_.push_back(item.topic);
        }
    }
    w_buf_.resize(age_buf_.size());
    kern_.decay_weights(age_buf_.data(), age_buf_.size(), cfg_.beta, cfg_.B,
                        w_buf_.data());
    for (std::size_t j = 0; j < w_buf_.size(); ++j) {
        const auto topic = static_cast<std::size_t>(topic_buf_[j]);
        if (slot_stamp_[topic] != stamp_) {
            slot_stamp_[topic] = stamp_;
            slot_of_[topic] = static_cast<std::uint32_t>(touched_.size());
            touched_.push_back(topic_buf_[j]);
            cw_.push_back(w_buf_[j]);
        } else {
            cw_[slot_of_[topic]] += w_buf_[j];
        }
    }

    double c = 0.0;
    for (double a : aw_buf_)
        c += a;
    for (double w : cw_)
        c += w;
    ws.c = c;
}

std::vector<TopicProb> Simulator::distribution(std::uint32_t node, double t) {
    WeightState ws;
    gather_weights(node, t, ws);
    std::vector<TopicProb> out;
    if (!(ws.c > 0.0))
        return out;
    out.reserve(aw_buf_.size() + touched_.size());
    for (std::size_t i = 0; i < aw_buf_.size(); ++i) {
        const auto topic = static_cast<std::int32_t>(ws.win_begin + i);
        const auto ti = static_cast<std::size_t>(topic);
        const double cw = slot_stamp_[ti] == stamp_ ? cw_[slot_of_[ti]] : 0.0;
        out.push_back({topic, (aw_buf_[i] + cw) / ws.c, cw / ws.c});
    }
    for (std::size_t j = 0; j < touched_.size(); ++j) {
        const auto topic = static_cast<std::size_t>(touched_[j]);
        if (topic >= ws.win_begin && topic < ws.win_end)
            continue; // already merged into its window entry
        out.push_back({touched_[j], cw_[j] / ws.c, cw_[j] / ws.c});
    }
    return out;
}

std::optional<TopicChoice> Simulator::choose_topic(std::uint32_t node, double t) {
    WeightState ws;
    gather_weights(node, t, ws);
    return sample_from(ws);
}

std::optional<TopicChoice> Simulator::sample_from(const WeightState& ws) {
    if (!(ws.c > 0.0))
        return std::nullopt;

    double r = uniform01(rng_) * ws.c;
    TopicChoice last{-1, 0.0, false};
    for (std::size_t i = 0; i < aw_buf_.size(); ++i) {
        const auto topic = static_cast<std::int32_t>(ws.win_begin + i);
        const auto ti = static_cast<std::size_t>(topic);
        const double a = aw_buf_[i];
        const double cw = slot_stamp_[ti] == stamp_ ? cw_[slot_of_[ti]] : 0.0;
        if (a > 0.0) {
            if (r < a)
                return TopicChoice{topic, cw / ws.c, true};
            last = {topic, cw / ws.c, true};
        }
        r -= a;
        if (cw > 0.0) {
            if (r < cw)
                return TopicChoice{topic, cw / ws.c, false};
            last = {topic, cw / ws.c, false};
        }
        r -= cw;
    }
    for (std::size_t j = 0; j < touched_.size(); ++j) {
        const auto topic = static_cast<std::size_t>(touched_[j]);
        if (topic >= ws.win_begin && topic < ws.win_end)
            continue;
        const double cw = cw_[j];
        if (cw > 0.0) {
            if (r < cw)
                return TopicChoice{touched_[j], cw / ws.c, false};
            last = {touched_[j], cw / ws.c, false};
        }
        r -= cw;
    }
    // Rounding pushed the draw past the final segment; take the last live one.
    return last;
}

void Simulator::append_instance(std::uint32_t node, std::int32_t topic, double t,
                                double /*w_norm*/) {
    auto& list = lists_[node];
    list.items.push_back({t, topic});
    if (++live_instances_ > cfg_.max_live_instances)
        throw resource_error("sim: live instance cap exceeded (" +
                             std::to_string(cfg_.max_live_instances) + ")");
}

RunSummary Simulator::run(EventSink& sink) {
    if (ran_)
        throw validation_error("run: simulator already ran");
    ran_ = true;
    RunSummary summary;

    for (std::size_t i = 0; i < birth_.size(); ++i) {
        if (birth_[i] > 0.0)
            throw validation_error("run: injected topics must be born at t <= 0");
        sink.on_arrival({static_cast<std::int32_t>(i), birth_[i], seq_++});
        ++summary.arrivals;
    }

    const std::uint32_t n = net_.node_count();
    const std::uint32_t kArrival = n;
    using QItem = std::pair<double, std::uint32_t>;
    std::priority_queue<QItem, std::vector<QItem>, std::greater<QItem>> queue;

    queue.emplace(exp_gap(rng_, cfg_.lambda1), kArrival);
    for (std::uint32_t u = 0; u < n; ++u)
        queue.emplace(exp_gap(rng_, cfg_.lambda2), u);

    while (!queue.empty()) {
        const auto [t, actor] = queue.top();
        if (t > cfg_.horizon)
            break;
        queue.pop();
        if (actor == kArrival) {
            const auto topic = inject_topic(t);
            sink.on_arrival({topic, t, seq_++});
            ++summary.arrivals;
            queue.emplace(t + exp_gap(rng_, cfg_.lambda1), kArrival);
        } else {
            expire(lists_[actor], t);
            WeightState ws;
            gather_weights(actor, t, ws);
            sink.on_activity(actor, t, ws.c);
            if (auto choice = sample_from(ws)) {
                append_instance(actor, choice->topic, t, choice->w_norm);
                sink.on_instance({t, choice->w_norm, seq_++, choice->topic,
                                  actor, choice->adopted});
                ++summary.instances;
            } else {
                ++summary.no_action;
            }
            queue.emplace(t + exp_gap(rng_, cfg_.lambda2), actor);
        }
    }
    return summary;
}

EventTrace simulate(const Network& net, const SimConfig& cfg) {
    struct CollectSink final : EventSink {
        EventTrace* trace;
        void on_arrival(const GlobalTopic& g) override { trace->arrivals.push_back(g); }
        void on_instance(const Instance& i) override { trace->instances.push_back(i); }
    };
    EventTrace trace;
    trace.config = cfg;
    trace.net = net.params();
    CollectSink sink;
    sink.trace = &trace;
    Simulator sim(net, cfg);
    trace.no_action_events = sim.run(sink).no_action;
    return trace;
}

RunSummary simulate_stream(const Network& net, const SimConfig& cfg, EventSink& sink) {
    Simulator sim(net, cfg);
    return sim.run(sink);
}

} // namespace topicsim
