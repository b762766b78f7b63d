#include "teleqos/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <queue>
#include <stdexcept>
#include <string>
#include <tuple>

#include "teleqos/deadband.hpp"
#include "teleqos/drop_tail_queue.hpp"
#include "teleqos/error.hpp"
#include "teleqos/tcp_newreno.hpp"

namespace teleqos {
namespace {

constexpr SimTime kRto = kNanosPerSecond;               // idle retransmission timer
constexpr SimTime kDelayedAckTimeout = 200'000'000;     // 200 ms
constexpr std::uint32_t kAckSize = 40;

// Same-time ordering classes.
enum class EvClass : std::uint8_t { Dequeue = 0, Arrival = 1, SourceSend = 2, Timer = 3 };

enum class EvType : std::uint8_t { TxComplete, DataArrival, AckArrival, SourceEmit, RtoCheck, DelayedAck };

struct Event {
  SimTime time = 0;
  EvClass cls = EvClass::Dequeue;
  FlowId flow = 0;
  std::uint64_t order = 0;
  EvType type = EvType::TxComplete;
  std::uint64_t aux = 0;  // ACK number, emission index or timer generation
  Packet pkt;
};

struct Later {
  bool operator()(const Event& a, const Event& b) const {
    return std::tie(a.time, a.cls, a.flow, a.order) > std::tie(b.time, b.cls, b.flow, b.order);
  }
};

struct FlowState {
  const FlowSpec* spec = nullptr;
  FlowId id = 0;
  FlowCounters counters;
  // Adaptive
  const std::vector<MuxPacket>* schedule = nullptr;
  // Tcp
  std::unique_ptr<TcpNewReno> sender;
  std::unique_ptr<TcpReceiver> receiver;
  SimTime last_progress = 0;
  bool rto_pending = false;
  std::uint64_t delack_generation = 0;
};

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  // splitmix64 finalizer over the pair
  std::uint64_t z = a * 0x9e3779b97f4a7c15ULL + b + 0x632be59bd9b4e019ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class Engine {
 public:
  Engine(const ScenarioConfig& sc, const std::vector<FlowInfo>& infos,
         const std::vector<std::vector<MuxPacket>>& schedules, SimTime duration, SimTime warmup,
         const RunOptions& opt)
      : sc_(sc),
        opt_(opt),
        duration_(duration),
        warmup_(warmup),
        tau_(to_sim_time(sc.tau)),
        queue_(static_cast<std::uint64_t>(std::llround(sc.buf))),
        metrics_(infos, warmup, opt.keep_delay_series),
        cycles_(std::make_shared<CycleExtractor>(infos, warmup,
                                                 to_sim_time(2.0 * sc.tau + sc.buf / sc.mu))) {
    result_.trace.flows = infos;
    result_.trace.warmup = warmup;
    result_.trace.duration = duration;
    result_.trace.mu = sc.mu;
    result_.trace.tau = sc.tau;
    result_.trace.buf = sc.buf;
    result_.min_queue_after_warmup = queue_.capacity();

    flows_.resize(sc.flows.size());
    for (std::size_t i = 0; i < sc.flows.size(); ++i) {
      FlowState& f = flows_[i];
      f.spec = &sc.flows[i];
      f.id = static_cast<FlowId>(i);
      if (f.spec->kind == FlowKind::Tcp) {
        f.sender = std::make_unique<TcpNewReno>();
        f.receiver = std::make_unique<TcpReceiver>(f.spec->n_ack);
      }
      if (f.spec->kind == FlowKind::Adaptive) f.schedule = &schedules[i];
    }
  }

  RunResult run() {
    for (auto& f : flows_) seed_source(f);
    while (!events_.empty() && events_.top().time < duration_) {
      Event ev = events_.top();
      events_.pop();
      now_ = ev.time;
      ++result_.events;
      dispatch(ev);
    }
    finish();
    return std::move(result_);
  }

 private:
  void schedule(SimTime t, EvClass cls, FlowId flow, EvType type, std::uint64_t aux = 0,
                Packet pkt = {}) {
    events_.push(Event{t, cls, flow, next_order_++, type, aux, std::move(pkt)});
  }

  void seed_source(FlowState& f) {
    switch (f.spec->kind) {
      case FlowKind::Tcp:
        schedule(to_sim_time(f.spec->phase), EvClass::SourceSend, f.id, EvType::SourceEmit);
        break;
      case FlowKind::Cbr:
      case FlowKind::Haptic:
        schedule(cbr_emission_time(f, 0), EvClass::SourceSend, f.id, EvType::SourceEmit, 0);
        break;
      case FlowKind::Adaptive:
        if (!f.schedule->empty()) {
          schedule(mux_time(f, 0), EvClass::SourceSend, f.id, EvType::SourceEmit, 0);
        }
        break;
    }
  }

  SimTime cbr_emission_time(const FlowState& f, std::uint64_t k) const {
    // Absolute schedule so rounding does not accumulate.
    return to_sim_time(f.spec->phase) +
           static_cast<SimTime>(std::llround(static_cast<double>(k) * f.spec->gap() * 1e9));
  }

  SimTime mux_time(const FlowState& f, std::size_t i) const {
    return to_sim_time(f.spec->phase + (*f.schedule)[i].time);
  }

  void dispatch(const Event& ev) {
    FlowState* f = ev.flow < flows_.size() ? &flows_[ev.flow] : nullptr;
    switch (ev.type) {
      case EvType::TxComplete: on_tx_complete(); break;
      case EvType::DataArrival: on_data_arrival(*f, ev.pkt); break;
      case EvType::AckArrival: on_ack_arrival(*f, ev.aux); break;
      case EvType::SourceEmit: on_source_emit(*f, ev.aux); break;
      case EvType::RtoCheck: on_rto_check(*f); break;
      case EvType::DelayedAck: on_delayed_ack(*f, ev.aux); break;
    }
  }

  void emit(TraceRecord r) {
    if (r.kind == EventKind::Enqueue || r.kind == EventKind::Dequeue || r.kind == EventKind::Drop) {
      result_.max_queue = std::max(result_.max_queue, r.queue_bytes);
      if (r.time >= warmup_) {
        result_.min_queue_after_warmup = std::min(result_.min_queue_after_warmup, r.queue_bytes);
      }
    }
    metrics_.consume(r);
    cycles_->consume(r);
    if (opt_.sink) opt_.sink(r);
    if (opt_.keep_records) result_.trace.records.push_back(r);
  }

  TraceRecord record(EventKind kind, const Packet& p) const {
    TraceRecord r;
    r.time = now_;
    r.kind = kind;
    r.flow = p.flow;
    r.seq = p.seq;
    r.size = p.size;
    r.queue_bytes = queue_.occupancy();
    r.tag = p.tag;
    r.media = p.media_view();
    r.created = p.created;
    const FlowState& f = flows_[p.flow];
    if (f.sender) r.cwnd = f.sender->cwnd();
    return r;
  }

  void inject(FlowState& f, Packet p) {
    p.created = now_;
    ++f.counters.created;
    emit(record(EventKind::Send, p));
    if (queue_.offer(p)) {
      p.enqueued = now_;
      emit(record(EventKind::Enqueue, p));
      if (!link_busy_) start_transmission();
    } else {
      ++f.counters.dropped;
      emit(record(EventKind::Drop, p));
    }
  }

  void start_transmission() {
    link_busy_ = true;
    const Packet& head = queue_.front();
    const auto tx = static_cast<SimTime>(std::llround(head.size * 1e9 / sc_.mu));
    schedule(now_ + std::max<SimTime>(tx, 1), EvClass::Dequeue, head.flow, EvType::TxComplete);
  }

  void on_tx_complete() {
    Packet p = queue_.pop();
    p.dequeued = now_;
    emit(record(EventKind::Dequeue, p));
    schedule(now_ + tau_, EvClass::Arrival, p.flow, EvType::DataArrival, 0, p);
    if (!queue_.empty()) {
      start_transmission();
    } else {
      link_busy_ = false;
    }
    if (opt_.check_invariants) {
      if (queue_.occupancy() > queue_.capacity()) throw std::logic_error("queue over capacity");
      if (!queue_.empty() && !link_busy_) throw std::logic_error("link idle with a backlog");
    }
  }

  void on_data_arrival(FlowState& f, Packet p) {
    p.delivered = now_;
    ++f.counters.delivered;
    emit(record(EventKind::Deliver, p));
    if (!f.receiver) return;
    const TcpReceiver::Result r = f.receiver->on_segment(p.seq);
    handle_receiver(f, r);
  }

  void handle_receiver(FlowState& f, const TcpReceiver::Result& r) {
    if (r.send_ack) {
      ++f.delack_generation;
      schedule(now_ + tau_, EvClass::Arrival, f.id, EvType::AckArrival, r.ack);
    } else if (r.arm_delayed_ack) {
      schedule(now_ + kDelayedAckTimeout, EvClass::Timer, f.id, EvType::DelayedAck,
               ++f.delack_generation);
    }
  }

  void on_delayed_ack(FlowState& f, std::uint64_t generation) {
    if (generation != f.delack_generation) return;
    handle_receiver(f, f.receiver->on_delayed_ack_timeout());
  }

  void send_tcp(FlowState& f, const TcpSendList& list) {
    for (std::size_t i = 0; i < list.seqs.size(); ++i) {
      Packet p;
      p.flow = f.id;
      p.seq = list.seqs[i];
      p.size = static_cast<std::uint32_t>(std::llround(f.spec->packet));
      p.tag = MediaTag::TcpData;
      p.retransmission = i < list.retransmissions;
      inject(f, p);
    }
    arm_rto(f);
  }

  void window_record(FlowState& f, double before) {
    if (f.sender->cwnd() == before) return;
    TraceRecord r;
    r.time = now_;
    r.kind = EventKind::WindowChange;
    r.flow = f.id;
    r.seq = f.sender->snd_una();
    r.queue_bytes = queue_.occupancy();
    r.cwnd = f.sender->cwnd();
    r.tag = MediaTag::TcpData;
    r.created = now_;
    emit(r);
  }

  void on_ack_arrival(FlowState& f, std::uint64_t ack) {
    TraceRecord r;
    r.time = now_;
    r.kind = EventKind::Ack;
    r.flow = f.id;
    r.seq = ack;
    r.size = kAckSize;
    r.queue_bytes = queue_.occupancy();
    r.cwnd = f.sender->cwnd();
    r.tag = MediaTag::TcpAck;
    r.created = now_;
    emit(r);

    const double before = f.sender->cwnd();
    const std::uint64_t una = f.sender->snd_una();
    const TcpSendList list = f.sender->on_ack(ack);
    if (f.sender->snd_una() > una) f.last_progress = now_;
    window_record(f, before);
    send_tcp(f, list);
  }

  void arm_rto(FlowState& f) {
    if (f.rto_pending || f.sender->outstanding() == 0) return;
    f.rto_pending = true;
    schedule(std::max(now_, f.last_progress) + kRto, EvClass::Timer, f.id, EvType::RtoCheck);
  }

  void on_rto_check(FlowState& f) {
    f.rto_pending = false;
    if (f.sender->outstanding() == 0) return;
    if (now_ - f.last_progress >= kRto) {
      const double before = f.sender->cwnd();
      const TcpSendList list = f.sender->on_timeout();
      f.last_progress = now_;
      window_record(f, before);
      send_tcp(f, list);
    }
    arm_rto(f);
  }

  void on_source_emit(FlowState& f, std::uint64_t index) {
    switch (f.spec->kind) {
      case FlowKind::Tcp: {
        f.last_progress = now_;
        send_tcp(f, f.sender->start());
        break;
      }
      case FlowKind::Cbr:
      case FlowKind::Haptic: {
        Packet p;
        p.flow = f.id;
        p.seq = index;
        p.size = static_cast<std::uint32_t>(std::llround(f.spec->packet));
        if (f.spec->kind == FlowKind::Haptic) {
          p.tag = MediaTag::Haptic;
          p.payload = {static_cast<std::uint32_t>(std::llround(f.spec->haptic_payload)),
                       static_cast<std::uint32_t>(std::llround(f.spec->audio_payload)),
                       static_cast<std::uint32_t>(std::llround(f.spec->video_payload))};
        } else {
          p.tag = MediaTag::CbrCross;
        }
        inject(f, p);
        schedule(cbr_emission_time(f, index + 1), EvClass::SourceSend, f.id, EvType::SourceEmit,
                 index + 1);
        break;
      }
      case FlowKind::Adaptive: {
        const MuxPacket& m = (*f.schedule)[index];
        Packet p;
        p.flow = f.id;
        p.seq = index;
        p.size = m.size();
        p.tag = m.kind == MuxPacketKind::SignificantHaptic ? MediaTag::Haptic : MediaTag::Video;
        p.payload = {m.haptic_bytes, 0, m.video_bytes};
        inject(f, p);
        if (index + 1 < f.schedule->size()) {
          schedule(mux_time(f, index + 1), EvClass::SourceSend, f.id, EvType::SourceEmit,
                   index + 1);
        }
        break;
      }
    }
  }

  void finish() {
    // Whatever is still queued or propagating is in flight.
    std::vector<std::uint64_t> queued(flows_.size(), 0);
    {
      DropTailQueue copy = queue_;
      while (!copy.empty()) ++queued[copy.pop().flow];
    }
    std::vector<std::uint64_t> propagating(flows_.size(), 0);
    while (!events_.empty()) {
      const Event& ev = events_.top();
      if (ev.type == EvType::DataArrival) ++propagating[ev.flow];
      events_.pop();
    }
    for (auto& f : flows_) {
      f.counters.in_flight = queued[f.id] + propagating[f.id];
      result_.counters.push_back(f.counters);
    }
    result_.metrics = metrics_.all();
  }

 public:
  std::shared_ptr<const CycleExtractor> cycle_extractor() const { return cycles_; }

 private:

  const ScenarioConfig& sc_;
  const RunOptions& opt_;
  SimTime duration_;
  SimTime warmup_;
  SimTime tau_;
  SimTime now_ = 0;
  DropTailQueue queue_;
  bool link_busy_ = false;
  std::priority_queue<Event, std::vector<Event>, Later> events_;
  std::uint64_t next_order_ = 0;
  std::vector<FlowState> flows_;
  FlowMetricsCollector metrics_;
  std::shared_ptr<CycleExtractor> cycles_;
  RunResult result_;
};

}  // namespace

const FlowMetrics& RunResult::flow_metrics(FlowId id) const {
  if (id >= metrics.size()) throw UnknownFlow("unknown flow id " + std::to_string(id));
  return metrics[id];
}

CycleStats RunResult::cycles() const {
  if (!cycle_extractor_) throw InsufficientCycles("run produced no cycle data");
  return cycle_extractor_->finish();
}

std::vector<MuxPacket> adaptive_flow_packets(const FlowSpec& flow, double duration,
                                             std::uint64_t run_seed) {
  std::vector<HapticSample> samples;
  if (flow.trace_file) {
    std::ifstream in(*flow.trace_file);
    if (!in) throw ConfigError("flow." + flow.name + ".trace_file", "cannot open " + *flow.trace_file);
    samples = read_haptic_csv(in);
    std::erase_if(samples, [&](const HapticSample& s) { return s.time >= duration; });
  } else {
    SignalSpec spec = flow.signal;
    spec.seed = mix_seed(flow.signal.seed, run_seed);
    samples = synth_haptic_trace(spec, duration);
  }
  const std::vector<bool> flags = deadband_filter(samples, flow.deadband_k);
  return vh_mux(samples, flags, flow.mux);
}

Simulator::Simulator(ScenarioConfig scenario) : scenario_(std::move(scenario)) {
  scenario_.validate();
  for (std::size_t i = 0; i < scenario_.flows.size(); ++i) {
    const FlowSpec& f = scenario_.flows[i];
    flows_.push_back({static_cast<FlowId>(i), f.name, f.kind == FlowKind::Tcp});
  }
  mux_schedules_.resize(scenario_.flows.size());
  for (std::size_t i = 0; i < scenario_.flows.size(); ++i) {
    if (scenario_.flows[i].kind == FlowKind::Adaptive) {
      mux_schedules_[i] =
          adaptive_flow_packets(scenario_.flows[i], scenario_.run.duration, scenario_.run.seed);
    }
  }
}

const std::vector<MuxPacket>* Simulator::mux_schedule(FlowId flow) const {
  if (flow >= mux_schedules_.size() || scenario_.flows[flow].kind != FlowKind::Adaptive) {
    return nullptr;
  }
  return &mux_schedules_[flow];
}

RunResult Simulator::run(double duration, double warmup, const RunOptions& options) const {
  if (!(duration >= 0.0)) throw InvalidParams("duration must be >= 0");
  if (!(warmup >= 0.0) || (duration > 0.0 && !(warmup < duration))) {
    throw InvalidParams("warmup must satisfy 0 <= warmup < duration");
  }
  const std::vector<std::vector<MuxPacket>>* schedules = &mux_schedules_;
  std::vector<std::vector<MuxPacket>> longer;
  if (duration > scenario_.run.duration) {
    longer.resize(scenario_.flows.size());
    for (std::size_t i = 0; i < scenario_.flows.size(); ++i) {
      if (scenario_.flows[i].kind == FlowKind::Adaptive) {
        longer[i] = adaptive_flow_packets(scenario_.flows[i], duration, scenario_.run.seed);
      }
    }
    schedules = &longer;
  }
  if (duration == 0.0) {
    RunResult empty;
    empty.trace.flows = flows_;
    empty.trace.mu = scenario_.mu;
    empty.trace.tau = scenario_.tau;
    empty.trace.buf = scenario_.buf;
    FlowMetricsCollector none(flows_, 0);
    empty.metrics = none.all();
    empty.counters.resize(flows_.size());
    return empty;
  }
  Engine engine(scenario_, flows_, *schedules, to_sim_time(duration), to_sim_time(warmup), options);
  RunResult result = engine.run();
  result.cycle_extractor_ = engine.cycle_extractor();
  return result;
}

RunResult Simulator::run(const RunOptions& options) const {
  return run(scenario_.run.duration, scenario_.run.resolved_warmup(), options);
}

Simulator build_simulator(const ScenarioConfig& scenario) { return Simulator(scenario); }

}  // namespace teleqos
