#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <memory>
#include <unordered_map>
#include <utility>

namespace lmu {

/// Simple types over the single constant `bot` and the arrow `->`.
///
/// Values are immutable and share structure; copying is cheap. Arrows are
/// hash-consed per thread, so equal types built on one thread share a node.
/// Negation is not a constructor: `~A` is `A -> bot`.
class Type {
 public:
  static Type bot() { return Type(); }
  static Type arrow(Type domain, Type codomain);

  bool is_bot() const { return node_ == nullptr; }
  bool is_arrow() const { return node_ != nullptr; }

  // Only valid on arrows.
  const Type& domain() const;
  const Type& codomain() const;

  /// Structural order: bot first, then arrows by domain, then codomain.
  friend std::strong_ordering operator<=>(const Type& a, const Type& b) {
    if (a.node_ == b.node_) return std::strong_ordering::equal;
    if (a.is_bot()) return std::strong_ordering::less;
    if (b.is_bot()) return std::strong_ordering::greater;
    if (auto c = a.domain() <=> b.domain(); c != 0) return c;
    return a.codomain() <=> b.codomain();
  }
  friend bool operator==(const Type& a, const Type& b) { return (a <=> b) == 0; }

 private:
  struct Node;

  Type() = default;
  explicit Type(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

struct Type::Node {
  Type domain;
  Type codomain;
};

inline Type Type::arrow(Type domain, Type codomain) {
  struct KeyHash {
    std::size_t operator()(const std::pair<const Node*, const Node*>& k) const {
      return std::hash<const Node*>()(k.first) * 31 + std::hash<const Node*>()(k.second);
    }
  };
  thread_local std::unordered_map<std::pair<const Node*, const Node*>, std::shared_ptr<const Node>, KeyHash> interned;
  auto& slot = interned[{domain.node_.get(), codomain.node_.get()}];
  if (!slot) slot = std::make_shared<const Node>(Node{std::move(domain), std::move(codomain)});
  return Type(slot);
}
inline const Type& Type::domain() const { return node_->domain; }
inline const Type& Type::codomain() const { return node_->codomain; }

inline Type negation(Type a) { return Type::arrow(std::move(a), Type::bot()); }

/// Number of connectives in a type.
inline std::size_t lgt(const Type& a) {
  if (a.is_bot()) return 0;
  return 1 + lgt(a.domain()) + lgt(a.codomain());
}

}  // namespace lmu
