#include "ndsent/schedule.hpp"

#include <algorithm>

#include "ndsent/errors.hpp"

namespace nds {

IndexSequence::IndexSequence(std::string name, Generator gen,
                             std::optional<std::size_t> term_count)
    : state_(std::make_shared<State>()) {
  state_->name = std::move(name);
  state_->gen = std::move(gen);
  state_->term_count = term_count;
}

Integer IndexSequence::term(std::size_t k) const {
  State& st = *state_;
  if (st.term_count && k >= *st.term_count) {
    throw UsageError("index sequence '" + st.name + "' has only " +
                     std::to_string(*st.term_count) + " terms");
  }
  std::lock_guard<std::mutex> lock(st.mu);
  while (st.cache.size() <= k) {
    Integer t = st.gen(st.cache.size());
    if (!st.cache.empty() && t <= st.cache.back()) {
      throw DomainError("index sequence '" + st.name +
                        "' is not strictly increasing");
    }
    st.cache.push_back(std::move(t));
  }
  return st.cache[k];
}

bool IndexSequence::member(const Integer& i) const {
  auto nxt = next_member_geq(i);
  return nxt && *nxt == i;
}

std::optional<Integer> IndexSequence::next_member_geq(const Integer& i) const {
  for (std::size_t k = 0;; ++k) {
    if (state_->term_count && k >= *state_->term_count) return std::nullopt;
    Integer t = term(k);
    if (t >= i) return t;
  }
}

IndexSequence IndexSequence::pow2_squares() {
  return IndexSequence("pow2-squares", [](std::size_t k) {
    Integer t = 1;
    mpz_mul_2exp(t.get_mpz_t(), t.get_mpz_t(),
                 static_cast<mp_bitcnt_t>(k) * static_cast<mp_bitcnt_t>(k));
    return t;
  });
}

IndexSequence IndexSequence::explicit_terms(std::vector<Integer> terms) {
  for (std::size_t k = 0; k + 1 < terms.size(); ++k) {
    if (!(terms[k] < terms[k + 1])) {
      throw DomainError("explicit index sequence must be strictly increasing");
    }
  }
  auto count = terms.size();
  auto store = std::make_shared<std::vector<Integer>>(std::move(terms));
  return IndexSequence(
      "explicit", [store](std::size_t k) { return (*store)[k]; }, count);
}

SystemSchedule SystemSchedule::constant(std::size_t map_index) {
  SystemSchedule s;
  s.kind_ = Kind::constant;
  s.pattern_ = {map_index};
  return s;
}

SystemSchedule SystemSchedule::periodic(std::vector<std::size_t> pattern) {
  if (pattern.empty()) throw DomainError("periodic schedule needs a pattern");
  SystemSchedule s;
  s.kind_ = Kind::periodic;
  s.pattern_ = std::move(pattern);
  return s;
}

SystemSchedule SystemSchedule::index_set(IndexSequence seq, std::size_t on_map,
                                         std::size_t off_map) {
  SystemSchedule s;
  s.kind_ = Kind::index_set;
  s.seq_ = std::make_shared<IndexSequence>(std::move(seq));
  s.on_map_ = on_map;
  s.off_map_ = off_map;
  return s;
}

std::size_t SystemSchedule::map_at(const Integer& i) const {
  if (i < 0) throw DomainError("negative time index");
  switch (kind_) {
    case Kind::constant:
      return pattern_[0];
    case Kind::periodic: {
      Integer r;
      Integer p(static_cast<long>(pattern_.size()));
      mpz_fdiv_r(r.get_mpz_t(), i.get_mpz_t(), p.get_mpz_t());
      return pattern_[r.get_ui()];
    }
    case Kind::index_set:
      return seq_->member(i) ? on_map_ : off_map_;
  }
  throw Error("unreachable");
}

const IndexSequence& SystemSchedule::sequence() const {
  if (!seq_) throw UsageError("schedule has no index sequence");
  return *seq_;
}

std::size_t SystemSchedule::max_map_index() const {
  if (kind_ == Kind::index_set) return std::max(on_map_, off_map_);
  return *std::max_element(pattern_.begin(), pattern_.end());
}

}  // namespace nds
