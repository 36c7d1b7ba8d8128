#include "rule9/automaton.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace rule9 {

UndefinedTransition::UndefinedTransition(std::string state, std::string event, std::ptrdiff_t index)
    : ProtocolError("undefined transition (" + state + ", " + event + ")" +
                    (index >= 0 ? " at event index " + std::to_string(index) : std::string{})),
      state_(std::move(state)),
      event_(std::move(event)),
      index_(index) {}

Dfa::Dfa(std::set<std::string> states, std::set<std::string> events, std::vector<Transition> transitions,
         std::string initial, std::set<std::string> marked)
    : states_(std::move(states)), events_(std::move(events)), initial_(std::move(initial)), marked_(std::move(marked)) {
  if (!states_.contains(initial_)) throw ValidationError("initial state '" + initial_ + "' is not a state");
  for (const auto& m : marked_) {
    if (!states_.contains(m)) throw ValidationError("marked state '" + m + "' is not a state");
  }
  for (auto& t : transitions) {
    if (!states_.contains(t.from) || !states_.contains(t.to)) {
      throw ValidationError("transition (" + t.from + ", " + t.event + ") -> " + t.to + " uses an unknown state");
    }
    if (!events_.contains(t.event)) throw ValidationError("transition uses unknown event '" + t.event + "'");
    auto [it, inserted] = delta_.emplace(std::make_pair(t.from, t.event), t.to);
    if (!inserted) {
      throw ValidationError("nondeterministic: (" + t.from + ", " + t.event + ") defined twice");
    }
  }
}

std::string Dfa::step(const std::string& state, const std::string& event) const {
  if (!states_.contains(state)) throw ValidationError("unknown state '" + state + "'");
  const auto it = delta_.find({state, event});
  if (it == delta_.end()) throw UndefinedTransition(state, event);
  return it->second;
}

RunResult Dfa::run_from(const std::string& state, std::span<const std::string> events) const {
  if (!states_.contains(state)) throw ValidationError("unknown state '" + state + "'");
  RunResult r;
  r.final_state = state;
  r.trace.push_back(state);
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (!events_.contains(events[i])) throw ValidationError("unknown event '" + events[i] + "'");
    const auto it = delta_.find({r.final_state, events[i]});
    if (it == delta_.end()) throw UndefinedTransition(r.final_state, events[i], static_cast<std::ptrdiff_t>(i));
    r.final_state = it->second;
    r.trace.push_back(r.final_state);
  }
  r.accepted = is_marked(r.final_state);
  return r;
}

RunResult Dfa::run(std::span<const std::string> events) const { return run_from(initial_, events); }

Dfa Dfa::without(std::span<const std::pair<std::string, std::string>> removed) const {
  std::vector<Transition> kept;
  for (const auto& [key, to] : delta_) {
    if (std::find(removed.begin(), removed.end(), key) == removed.end()) kept.push_back({key.first, key.second, to});
  }
  return Dfa(states_, events_, std::move(kept), initial_, marked_);
}

std::string Dfa::to_dot(std::string_view name) const {
  std::ostringstream out;
  out << "digraph " << name << " {\n  rankdir=LR;\n  __start [shape=point];\n";
  for (const auto& s : states_) {
    out << "  \"" << s << "\" [shape=" << (is_marked(s) ? "doublecircle" : "circle") << "];\n";
  }
  out << "  __start -> \"" << initial_ << "\";\n";
  for (const auto& [key, to] : delta_) {
    out << "  \"" << key.first << "\" -> \"" << to << "\" [label=\"" << key.second << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

bool is_nonblocking(const Dfa& dfa) {
  std::set<std::string> reachable{dfa.initial()};
  std::deque<std::string> queue{dfa.initial()};
  while (!queue.empty()) {
    const std::string s = queue.front();
    queue.pop_front();
    for (const auto& [key, to] : dfa.transitions()) {
      if (key.first == s && reachable.insert(to).second) queue.push_back(to);
    }
  }

  std::set<std::string> coreachable(dfa.marked().begin(), dfa.marked().end());
  queue.assign(dfa.marked().begin(), dfa.marked().end());
  while (!queue.empty()) {
    const std::string s = queue.front();
    queue.pop_front();
    for (const auto& [key, to] : dfa.transitions()) {
      if (to == s && coreachable.insert(key.first).second) queue.push_back(key.first);
    }
  }
  return std::all_of(reachable.begin(), reachable.end(), [&](const std::string& s) { return coreachable.contains(s); });
}

std::string_view label(AssessmentEvent e) {
  switch (e) {
    case AssessmentEvent::D1: return "d1";
    case AssessmentEvent::NotD1: return "not_d1";
    case AssessmentEvent::D2: return "d2";
    case AssessmentEvent::NotD2: return "not_d2";
    case AssessmentEvent::D3: return "d3";
    case AssessmentEvent::NotD3: return "not_d3";
  }
  return "?";
}

AssessmentEvent parse_assessment_event(std::string_view s) {
  for (auto e : {AssessmentEvent::D1, AssessmentEvent::NotD1, AssessmentEvent::D2, AssessmentEvent::NotD2,
                 AssessmentEvent::D3, AssessmentEvent::NotD3}) {
    if (label(e) == s) return e;
  }
  throw ValidationError("unknown assessment event '" + std::string(s) + "'");
}

AssessmentEvent assessment_event(int criterion, bool holds) {
  switch (criterion) {
    case 1: return holds ? AssessmentEvent::D1 : AssessmentEvent::NotD1;
    case 2: return holds ? AssessmentEvent::D2 : AssessmentEvent::NotD2;
    case 3: return holds ? AssessmentEvent::D3 : AssessmentEvent::NotD3;
    default: throw ValidationError("assessment criterion must be 1, 2 or 3");
  }
}

Dfa build_g_d() {
  using namespace gd;
  auto ev = [](AssessmentEvent e) { return std::string(label(e)); };
  std::set<std::string> events;
  for (auto e : {AssessmentEvent::D1, AssessmentEvent::NotD1, AssessmentEvent::D2, AssessmentEvent::NotD2,
                 AssessmentEvent::D3, AssessmentEvent::NotD3}) {
    events.insert(ev(e));
  }
  return Dfa({D1, D2, D3, D4}, std::move(events),
             {
                 {D1, ev(AssessmentEvent::NotD1), D1},
                 {D1, ev(AssessmentEvent::D1), D2},
                 {D2, ev(AssessmentEvent::D2), D4},
                 {D2, ev(AssessmentEvent::NotD2), D3},
                 {D3, ev(AssessmentEvent::D3), D4},
                 {D3, ev(AssessmentEvent::NotD3), D1},
             },
             D1, {D1, D4});
}

const Dfa& g_d() {
  static const Dfa instance = build_g_d();
  return instance;
}

}  // namespace rule9
