#ifndef GIG_RULES_HPP
#define GIG_RULES_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gig/graph.hpp"

namespace gig {

/// Where a context anchor is located relative to the previous lexeme.
enum class AnchorLocation { Ancestor, ImmediateSuccessor, Successor };

std::string to_string(AnchorLocation loc);

struct Anchor {
  NodeId node = kNoNode;  // pattern node
  AnchorLocation location = AnchorLocation::ImmediateSuccessor;

  bool operator==(const Anchor&) const = default;
};

/// The precondition side of a rule: a parse-graph shaped template whose
/// labels may be proper subsets of what they match, possibly with coref
/// links, plus one or more located anchors.
struct ContextPattern {
  ParseGraph graph;
  std::vector<Anchor> anchors;

  bool operator==(const ContextPattern&) const = default;
};

/// Reference to a node either in the addendum template or in the context
/// pattern (newCorefs may tie fresh material to matched context nodes).
struct NodeRef {
  bool in_pattern = false;
  NodeId node = kNoNode;

  bool operator==(const NodeRef&) const = default;
};

struct NewCoref {
  std::string kind;
  NodeRef a, b;

  bool operator==(const NewCoref&) const = default;
};

/// One interpolation: the source/destination pair delimiting the path that
/// replaces the context anchor of the same index. Both absent means a
/// pure-coreference attachment that contributes no nodes.
struct Interpolation {
  std::optional<NodeId> source;
  std::optional<NodeId> destination;

  bool is_pure_coref() const { return !source && !destination; }
  bool operator==(const Interpolation&) const = default;
};

struct Addendum {
  ParseGraph graph;
  NodeId lexical = kNoNode;  // the single lexical node
  std::vector<Interpolation> interpolations;  // parallel to pattern anchors
  std::vector<NewCoref> new_corefs;

  bool operator==(const Addendum&) const = default;
};

struct Rule {
  std::string spelling;
  ContextPattern pattern;
  Addendum addendum;
  int priority = 0;  // rank among rules sharing the spelling; lower first
  std::string id;    // stable identifier, "<spelling>#<priority>"

  bool operator==(const Rule&) const = default;
};

struct Grammar {
  TypeLabel start_label;
  std::vector<Coreferentiality> coreferentialities;
  std::vector<Rule> rules;  // file order; priority is per spelling

  /// Indices of the rules for `spelling`, in priority order.
  std::vector<std::size_t> rules_for(const std::string& spelling) const;
  const Coreferentiality* coreferentiality(const std::string& name) const;

  bool operator==(const Grammar&) const = default;
};

/// True iff every atom of the anchor label is present in the node label.
/// Precondition: neither side contains the inheritance marker.
bool label_subsumes(const TypeLabel& anchor_label, const TypeLabel& node_label);

std::vector<Violation> validate_rule(const Rule& r);
std::vector<Violation> validate_rule(const Rule& r, const Grammar& g);
std::vector<Violation> validate_grammar(const Grammar& g);

/// Frontier of a template component in left-to-right order, treating each
/// component root like a summary-tree root. Used by the validator and by
/// the engine's successor-set bookkeeping.
struct TemplateLayout {
  std::map<NodeId, int> component;               // node -> component index
  std::vector<std::vector<NodeId>> frontiers;    // per component, ordered
  std::vector<NodeId> roots;                     // per component

  int frontier_position(NodeId id) const;        // -1 when not a frontier node
};

TemplateLayout template_layout(const ParseGraph& templ);

}  // namespace gig

#endif  // GIG_RULES_HPP
