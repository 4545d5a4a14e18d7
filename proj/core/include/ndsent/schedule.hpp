#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "ndsent/rational.hpp"

namespace nds {

// Strictly increasing sequence of nonnegative integer time indices, given by
// a named generator.  Terms can be astronomically large (e.g. 2^(k^2)), so
// membership tests work by generating terms up to the query point; generated
// terms are cached.
class IndexSequence {
 public:
  using Generator = std::function<Integer(std::size_t)>;

  IndexSequence(std::string name, Generator gen,
                std::optional<std::size_t> term_count = std::nullopt);

  const std::string& name() const { return state_->name; }
  // Number of terms when the sequence is finite.
  std::optional<std::size_t> term_count() const { return state_->term_count; }

  Integer term(std::size_t k) const;
  bool member(const Integer& i) const;
  // Smallest term >= i, if any.
  std::optional<Integer> next_member_geq(const Integer& i) const;

  // t_k = 2^(k^2): 1, 2, 16, 512, 65536, ...
  static IndexSequence pow2_squares();
  static IndexSequence explicit_terms(std::vector<Integer> terms);

 private:
  // Copies share the generator and its term cache.
  struct State {
    std::string name;
    Generator gen;
    std::optional<std::size_t> term_count;
    std::vector<Integer> cache;
    std::mutex mu;
  };
  std::shared_ptr<State> state_;
};

// Assigns a map (by index into the owning system's map table) to every time
// step i >= 0.
class SystemSchedule {
 public:
  enum class Kind { constant, periodic, index_set };

  static SystemSchedule constant(std::size_t map_index);
  static SystemSchedule periodic(std::vector<std::size_t> pattern);
  // on_map at steps belonging to seq, off_map everywhere else.
  static SystemSchedule index_set(IndexSequence seq, std::size_t on_map,
                                  std::size_t off_map);

  Kind kind() const { return kind_; }
  std::size_t map_at(const Integer& i) const;

  const std::vector<std::size_t>& pattern() const { return pattern_; }
  const IndexSequence& sequence() const;
  std::size_t on_map() const { return on_map_; }
  std::size_t off_map() const { return off_map_; }

  // Largest map index referenced (for table validation).
  std::size_t max_map_index() const;

 private:
  SystemSchedule() = default;
  Kind kind_ = Kind::constant;
  std::vector<std::size_t> pattern_;       // constant: size 1; periodic: size p
  std::shared_ptr<const IndexSequence> seq_;
  std::size_t on_map_ = 0, off_map_ = 0;
};

}  // namespace nds
