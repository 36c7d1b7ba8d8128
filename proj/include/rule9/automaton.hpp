#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rule9/errors.hpp"

namespace rule9 {

struct Transition {
  std::string from;
  std::string event;
  std::string to;
};

/// Raised when the transition function is undefined for (state, event).
class UndefinedTransition : public ProtocolError {
 public:
  UndefinedTransition(std::string state, std::string event, std::ptrdiff_t index = -1);

  const std::string& state() const { return state_; }
  const std::string& event() const { return event_; }
  /// Position in the event sequence, or -1 for a single step.
  std::ptrdiff_t index() const { return index_; }

 private:
  std::string state_;
  std::string event_;
  std::ptrdiff_t index_;
};

struct RunResult {
  std::string final_state;
  bool accepted = false;
  std::vector<std::string> trace;  // initial state followed by every visited state
};

/// Deterministic finite automaton over string labels with a partial
/// transition function.
class Dfa {
 public:
  Dfa(std::set<std::string> states, std::set<std::string> events, std::vector<Transition> transitions,
      std::string initial, std::set<std::string> marked);

  const std::set<std::string>& states() const { return states_; }
  const std::set<std::string>& events() const { return events_; }
  const std::string& initial() const { return initial_; }
  const std::set<std::string>& marked() const { return marked_; }
  const std::map<std::pair<std::string, std::string>, std::string>& transitions() const { return delta_; }

  bool is_marked(const std::string& state) const { return marked_.contains(state); }

  std::string step(const std::string& state, const std::string& event) const;
  RunResult run(std::span<const std::string> events) const;
  RunResult run_from(const std::string& state, std::span<const std::string> events) const;

  /// Copy without the listed (state, event) transitions.
  Dfa without(std::span<const std::pair<std::string, std::string>> removed) const;

  /// Graphviz text.
  std::string to_dot(std::string_view name = "dfa") const;

 private:
  std::set<std::string> states_;
  std::set<std::string> events_;
  std::map<std::pair<std::string, std::string>, std::string> delta_;
  std::string initial_;
  std::set<std::string> marked_;
};

/// Every state reachable from the initial state can reach a marked state.
bool is_nonblocking(const Dfa& dfa);

// Assessment automaton vocabulary.
namespace gd {
inline const std::string D1 = "D1";  // does the target need to give way?
inline const std::string D2 = "D2";  // is the target reporting restricted manoeuvrability?
inline const std::string D3 = "D3";  // evaluate the target's manoeuvrability
inline const std::string D4 = "D4";  // apply rule 9: invert give-way / stand-on
}  // namespace gd

enum class AssessmentEvent { D1, NotD1, D2, NotD2, D3, NotD3 };

std::string_view label(AssessmentEvent e);
AssessmentEvent parse_assessment_event(std::string_view s);
/// Positive or negative event for criterion i in {1, 2, 3}.
AssessmentEvent assessment_event(int criterion, bool holds);

/// Rule 9 assessment automaton: initial D1, marked {D1, D4}.
Dfa build_g_d();
const Dfa& g_d();

}  // namespace rule9
