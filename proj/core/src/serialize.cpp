#include "ndsent/serialize.hpp"

#include <json.hpp>

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "ndsent/errors.hpp"

namespace nds {
namespace {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Parse-side helpers.  Every reader takes a `ctx` string naming the position
// in the document so that error messages point at the offending field.

[[noreturn]] void fail(const std::string& ctx, const std::string& what) {
  throw ConfigError(ctx + ": " + what);
}

// Strict object shape check: all of `required` present, nothing outside
// required+optional allowed.
void expect_fields(const json& j, const std::string& ctx,
                   std::initializer_list<const char*> required,
                   std::initializer_list<const char*> optional = {}) {
  if (!j.is_object()) fail(ctx, "expected a JSON object");
  for (const char* key : required) {
    if (!j.contains(key)) fail(ctx, std::string("missing field \"") + key + "\"");
  }
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* key : required) known = known || item.key() == key;
    for (const char* key : optional) known = known || item.key() == key;
    if (!known) fail(ctx, "unknown field \"" + item.key() + "\"");
  }
}

const json& field(const json& j, const std::string& ctx, const char* key) {
  // expect_fields has already established presence.
  (void)ctx;
  return j.at(key);
}

Rational read_rational(const json& j, const std::string& ctx) {
  if (!j.is_string()) fail(ctx, "expected a rational as a \"p/q\" string");
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const Error& e) {
    fail(ctx, e.what());
  }
}

Integer read_integer(const json& j, const std::string& ctx) {
  Rational r = read_rational(j, ctx);
  if (!r.is_integer()) fail(ctx, "expected an integer, got " + r.str());
  return r.numerator();
}

bool read_bool(const json& j, const std::string& ctx) {
  if (!j.is_boolean()) fail(ctx, "expected a boolean");
  return j.get<bool>();
}

std::size_t read_index(const json& j, const std::string& ctx) {
  if (!j.is_number_unsigned()) fail(ctx, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

long long read_int64(const json& j, const std::string& ctx) {
  if (!j.is_number_integer()) fail(ctx, "expected an integer");
  return j.get<long long>();
}

std::string read_string(const json& j, const std::string& ctx) {
  if (!j.is_string()) fail(ctx, "expected a string");
  return j.get<std::string>();
}

const json& read_array(const json& j, const std::string& ctx) {
  if (!j.is_array()) fail(ctx, "expected an array");
  return j;
}

// Runs a value constructor, converting its validation errors (DomainError,
// UsageError, ...) into ConfigError: a rejected value inside a config
// document is a configuration problem.
template <typename Fn>
auto construct(const std::string& ctx, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    fail(ctx, e.what());
  }
}

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Interval

json interval_to(const Interval& iv) {
  return json{{"lo", iv.lo.str()},
              {"hi", iv.hi.str()},
              {"lo_closed", iv.lo_closed},
              {"hi_closed", iv.hi_closed}};
}

Interval interval_from(const json& j, const std::string& ctx) {
  expect_fields(j, ctx, {"lo", "hi", "lo_closed", "hi_closed"});
  Rational lo = read_rational(field(j, ctx, "lo"), ctx + ".lo");
  Rational hi = read_rational(field(j, ctx, "hi"), ctx + ".hi");
  bool lc = read_bool(field(j, ctx, "lo_closed"), ctx + ".lo_closed");
  bool hc = read_bool(field(j, ctx, "hi_closed"), ctx + ".hi_closed");
  return construct(ctx, [&] { return Interval(lo, hi, lc, hc); });
}

// ---------------------------------------------------------------------------
// IntervalSet (serialized as its component list)

json interval_set_to(const IntervalSet& s) {
  json arr = json::array();
  for (const Interval& c : s.components()) arr.push_back(interval_to(c));
  return arr;
}

IntervalSet interval_set_from(const json& j, const std::string& ctx) {
  const json& arr = read_array(j, ctx);
  std::vector<Interval> comps;
  comps.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    comps.push_back(interval_from(arr[i], ctx + "[" + std::to_string(i) + "]"));
  }
  return construct(ctx, [&] { return IntervalSet(std::move(comps)); });
}

// ---------------------------------------------------------------------------
// PwAffineMap

json map_to(const PwAffineMap& m) {
  json breaks = json::array();
  for (const Rational& b : m.breakpoints()) breaks.push_back(b.str());
  json pieces = json::array();
  for (const auto& p : m.pieces()) {
    pieces.push_back(
        json{{"slope", p.slope.str()}, {"intercept", p.intercept.str()}});
  }
  return json{{"breakpoints", std::move(breaks)}, {"pieces", std::move(pieces)}};
}

PwAffineMap map_from(const json& j, const std::string& ctx) {
  expect_fields(j, ctx, {"breakpoints", "pieces"});
  const json& jb = read_array(field(j, ctx, "breakpoints"), ctx + ".breakpoints");
  std::vector<Rational> breaks;
  breaks.reserve(jb.size());
  for (std::size_t i = 0; i < jb.size(); ++i) {
    breaks.push_back(
        read_rational(jb[i], ctx + ".breakpoints[" + std::to_string(i) + "]"));
  }
  const json& jp = read_array(field(j, ctx, "pieces"), ctx + ".pieces");
  std::vector<PwAffineMap::Piece> pieces;
  pieces.reserve(jp.size());
  for (std::size_t i = 0; i < jp.size(); ++i) {
    const std::string pctx = ctx + ".pieces[" + std::to_string(i) + "]";
    expect_fields(jp[i], pctx, {"slope", "intercept"});
    pieces.push_back(PwAffineMap::Piece{
        read_rational(field(jp[i], pctx, "slope"), pctx + ".slope"),
        read_rational(field(jp[i], pctx, "intercept"), pctx + ".intercept")});
  }
  return construct(
      ctx, [&] { return PwAffineMap(std::move(breaks), std::move(pieces)); });
}

// ---------------------------------------------------------------------------
// IndexSequence / SystemSchedule

json index_sequence_to(const IndexSequence& seq) {
  if (seq.name() == "pow2-squares") {
    return json{{"generator", "pow2-squares"}};
  }
  if (seq.name() == "explicit" && seq.term_count()) {
    json terms = json::array();
    const std::size_t count = *seq.term_count();
    for (std::size_t k = 0; k < count; ++k) {
      terms.push_back(Rational(seq.term(k)).str());
    }
    return json{{"generator", "explicit"}, {"terms", std::move(terms)}};
  }
  throw ConfigError("index sequence generator \"" + seq.name() +
                    "\" has no serial form");
}

IndexSequence index_sequence_from(const json& j, const std::string& ctx) {
  if (!j.is_object()) fail(ctx, "expected a JSON object");
  if (!j.contains("generator")) fail(ctx, "missing field \"generator\"");
  const std::string gen = read_string(j.at("generator"), ctx + ".generator");
  if (gen == "pow2-squares") {
    expect_fields(j, ctx, {"generator"});
    return IndexSequence::pow2_squares();
  }
  if (gen == "explicit") {
    expect_fields(j, ctx, {"generator", "terms"});
    const json& jt = read_array(j.at("terms"), ctx + ".terms");
    std::vector<Integer> terms;
    terms.reserve(jt.size());
    for (std::size_t k = 0; k < jt.size(); ++k) {
      terms.push_back(
          read_integer(jt[k], ctx + ".terms[" + std::to_string(k) + "]"));
    }
    return construct(
        ctx, [&] { return IndexSequence::explicit_terms(std::move(terms)); });
  }
  fail(ctx + ".generator", "unknown generator \"" + gen + "\"");
}

json schedule_to(const SystemSchedule& sch) {
  switch (sch.kind()) {
    case SystemSchedule::Kind::constant:
      return json{{"kind", "constant"}, {"map", sch.pattern().front()}};
    case SystemSchedule::Kind::periodic:
      return json{{"kind", "periodic"}, {"pattern", sch.pattern()}};
    case SystemSchedule::Kind::index_set:
      return json{{"kind", "index-set"},
                  {"sequence", index_sequence_to(sch.sequence())},
                  {"on_map", sch.on_map()},
                  {"off_map", sch.off_map()}};
  }
  throw ConfigError("unhandled schedule kind");
}

SystemSchedule schedule_from(const json& j, const std::string& ctx) {
  if (!j.is_object()) fail(ctx, "expected a JSON object");
  if (!j.contains("kind")) fail(ctx, "missing field \"kind\"");
  const std::string kind = read_string(j.at("kind"), ctx + ".kind");
  if (kind == "constant") {
    expect_fields(j, ctx, {"kind", "map"});
    return SystemSchedule::constant(read_index(j.at("map"), ctx + ".map"));
  }
  if (kind == "periodic") {
    expect_fields(j, ctx, {"kind", "pattern"});
    const json& jp = read_array(j.at("pattern"), ctx + ".pattern");
    std::vector<std::size_t> pattern;
    pattern.reserve(jp.size());
    for (std::size_t i = 0; i < jp.size(); ++i) {
      pattern.push_back(
          read_index(jp[i], ctx + ".pattern[" + std::to_string(i) + "]"));
    }
    return construct(
        ctx, [&] { return SystemSchedule::periodic(std::move(pattern)); });
  }
  if (kind == "index-set") {
    expect_fields(j, ctx, {"kind", "sequence", "on_map", "off_map"});
    IndexSequence seq = index_sequence_from(j.at("sequence"), ctx + ".sequence");
    std::size_t on = read_index(j.at("on_map"), ctx + ".on_map");
    std::size_t off = read_index(j.at("off_map"), ctx + ".off_map");
    return SystemSchedule::index_set(std::move(seq), on, off);
  }
  fail(ctx + ".kind", "unknown schedule kind \"" + kind + "\"");
}

// ---------------------------------------------------------------------------
// Space kind

std::string space_to(SpaceKind k) {
  return k == SpaceKind::circle ? "circle" : "interval";
}

SpaceKind space_from(const json& j, const std::string& ctx) {
  const std::string s = read_string(j, ctx);
  if (s == "interval") return SpaceKind::interval;
  if (s == "circle") return SpaceKind::circle;
  fail(ctx, "unknown space \"" + s + "\" (expected \"interval\" or \"circle\")");
}

// ---------------------------------------------------------------------------
// Partition / OpenCover helpers shared by several readers

json partition_to_value(const Partition& p) {
  json cells = json::array();
  for (const auto& c : p.cells()) {
    cells.push_back(
        json{{"name", c.name}, {"components", interval_set_to(c.set)}});
  }
  return json{{"cells", std::move(cells)}};
}

Partition partition_from_value(const json& j, const std::string& ctx) {
  expect_fields(j, ctx, {"cells"});
  const json& jc = read_array(j.at("cells"), ctx + ".cells");
  std::vector<Partition::Cell> cells;
  cells.reserve(jc.size());
  for (std::size_t i = 0; i < jc.size(); ++i) {
    const std::string cctx = ctx + ".cells[" + std::to_string(i) + "]";
    expect_fields(jc[i], cctx, {"name", "components"});
    cells.push_back(Partition::Cell{
        read_string(jc[i].at("name"), cctx + ".name"),
        interval_set_from(jc[i].at("components"), cctx + ".components")});
  }
  return construct(ctx, [&] { return Partition(std::move(cells)); });
}

json cover_to_value(const OpenCover& cover) {
  json elems = json::array();
  for (const Interval& e : cover.elements()) elems.push_back(interval_to(e));
  return json{{"elements", std::move(elems)}};
}

OpenCover cover_from_value(const json& j, const std::string& ctx) {
  expect_fields(j, ctx, {"elements"});
  const json& je = read_array(j.at("elements"), ctx + ".elements");
  std::vector<Interval> elems;
  elems.reserve(je.size());
  for (std::size_t i = 0; i < je.size(); ++i) {
    elems.push_back(
        interval_from(je[i], ctx + ".elements[" + std::to_string(i) + "]"));
  }
  return construct(ctx, [&] { return OpenCover(std::move(elems)); });
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

// ---------------------------------------------------------------------------
// Public API

std::string system_to_json(const NDSystem& sys) {
  if (sys.is_power()) {
    throw ConfigError(
        "power systems are materialized from a base system and have no serial "
        "form; serialize the base system instead");
  }
  json maps = json::array();
  for (const auto& nm : sys.maps()) {
    maps.push_back(json{{"name", nm.name}, {"map", map_to(nm.map)}});
  }
  json j{{"space", space_to(sys.space())},
         {"maps", std::move(maps)},
         {"schedule", schedule_to(sys.schedule())}};
  if (sys.certified_horizon()) j["certified_horizon"] = *sys.certified_horizon();
  return dump(j);
}

std::shared_ptr<const NDSystem> system_from_json(const std::string& text) {
  const json j = parse_document(text);
  const std::string ctx = "system";
  expect_fields(j, ctx, {"space", "maps", "schedule"}, {"certified_horizon"});
  SpaceKind space = space_from(j.at("space"), ctx + ".space");
  const json& jm = read_array(j.at("maps"), ctx + ".maps");
  std::vector<NDSystem::NamedMap> maps;
  maps.reserve(jm.size());
  for (std::size_t i = 0; i < jm.size(); ++i) {
    const std::string mctx = ctx + ".maps[" + std::to_string(i) + "]";
    expect_fields(jm[i], mctx, {"name", "map"});
    maps.push_back(
        NDSystem::NamedMap{read_string(jm[i].at("name"), mctx + ".name"),
                           map_from(jm[i].at("map"), mctx + ".map")});
  }
  SystemSchedule sch = schedule_from(j.at("schedule"), ctx + ".schedule");
  std::optional<long long> horizon;
  if (j.contains("certified_horizon")) {
    horizon = read_int64(j.at("certified_horizon"), ctx + ".certified_horizon");
  }
  return construct(ctx, [&] {
    return std::make_shared<const NDSystem>(space, std::move(maps),
                                            std::move(sch), horizon);
  });
}

std::string measure_to_json(const PwConstMeasure& mu) {
  json density = json::array();
  for (const auto& d : mu.density()) {
    density.push_back(json{
        {"lo", d.lo.str()}, {"hi", d.hi.str()}, {"height", d.height.str()}});
  }
  json atoms = json::array();
  for (const auto& a : mu.atoms()) {
    atoms.push_back(json{{"at", a.at.str()}, {"mass", a.mass.str()}});
  }
  return dump(json{{"density", std::move(density)}, {"atoms", std::move(atoms)}});
}

PwConstMeasure measure_from_json(const std::string& text) {
  const json j = parse_document(text);
  const std::string ctx = "measure";
  expect_fields(j, ctx, {"density", "atoms"});
  const json& jd = read_array(j.at("density"), ctx + ".density");
  std::vector<PwConstMeasure::DensityPiece> density;
  density.reserve(jd.size());
  for (std::size_t i = 0; i < jd.size(); ++i) {
    const std::string dctx = ctx + ".density[" + std::to_string(i) + "]";
    expect_fields(jd[i], dctx, {"lo", "hi", "height"});
    density.push_back(PwConstMeasure::DensityPiece{
        read_rational(jd[i].at("lo"), dctx + ".lo"),
        read_rational(jd[i].at("hi"), dctx + ".hi"),
        read_rational(jd[i].at("height"), dctx + ".height")});
  }
  const json& ja = read_array(j.at("atoms"), ctx + ".atoms");
  std::vector<PwConstMeasure::Atom> atoms;
  atoms.reserve(ja.size());
  for (std::size_t i = 0; i < ja.size(); ++i) {
    const std::string actx = ctx + ".atoms[" + std::to_string(i) + "]";
    expect_fields(ja[i], actx, {"at", "mass"});
    atoms.push_back(
        PwConstMeasure::Atom{read_rational(ja[i].at("at"), actx + ".at"),
                             read_rational(ja[i].at("mass"), actx + ".mass")});
  }
  return construct(ctx, [&] {
    return PwConstMeasure(std::move(density), std::move(atoms));
  });
}

std::string partition_to_json(const Partition& p) {
  return dump(partition_to_value(p));
}

Partition partition_from_json(const std::string& text) {
  return partition_from_value(parse_document(text), "partition");
}

std::string partition_sequence_to_json(const PartitionSequence& ps) {
  switch (ps.kind()) {
    case PartitionSequence::Kind::constant:
      return dump(json{{"kind", "constant"},
                       {"partition", partition_to_value(ps.pattern().front())}});
    case PartitionSequence::Kind::periodic: {
      json pattern = json::array();
      for (const Partition& p : ps.pattern()) {
        pattern.push_back(partition_to_value(p));
      }
      return dump(json{{"kind", "periodic"}, {"pattern", std::move(pattern)}});
    }
    case PartitionSequence::Kind::programmatic:
      throw ConfigError("programmatic partition sequence \"" + ps.name() +
                        "\" is defined by code and has no serial form");
  }
  throw ConfigError("unhandled partition sequence kind");
}

PartitionSequence partition_sequence_from_json(const std::string& text) {
  const json j = parse_document(text);
  const std::string ctx = "partition_sequence";
  if (!j.is_object()) fail(ctx, "expected a JSON object");
  if (!j.contains("kind")) fail(ctx, "missing field \"kind\"");
  const std::string kind = read_string(j.at("kind"), ctx + ".kind");
  if (kind == "constant") {
    expect_fields(j, ctx, {"kind", "partition"});
    return PartitionSequence::constant(
        partition_from_value(j.at("partition"), ctx + ".partition"));
  }
  if (kind == "periodic") {
    expect_fields(j, ctx, {"kind", "pattern"});
    const json& jp = read_array(j.at("pattern"), ctx + ".pattern");
    std::vector<Partition> parts;
    parts.reserve(jp.size());
    for (std::size_t i = 0; i < jp.size(); ++i) {
      parts.push_back(partition_from_value(
          jp[i], ctx + ".pattern[" + std::to_string(i) + "]"));
    }
    return construct(
        ctx, [&] { return PartitionSequence::periodic(std::move(parts)); });
  }
  fail(ctx + ".kind", "unknown partition sequence kind \"" + kind + "\"");
}

std::string cover_sequence_to_json(const CoverSequence& cs) {
  if (cs.is_constant()) {
    return dump(json{{"kind", "constant"},
                     {"cover", cover_to_value(cs.pattern().front())}});
  }
  json pattern = json::array();
  for (const OpenCover& c : cs.pattern()) pattern.push_back(cover_to_value(c));
  return dump(json{{"kind", "periodic"}, {"pattern", std::move(pattern)}});
}

CoverSequence cover_sequence_from_json(const std::string& text) {
  const json j = parse_document(text);
  const std::string ctx = "cover_sequence";
  if (!j.is_object()) fail(ctx, "expected a JSON object");
  if (!j.contains("kind")) fail(ctx, "missing field \"kind\"");
  const std::string kind = read_string(j.at("kind"), ctx + ".kind");
  if (kind == "constant") {
    expect_fields(j, ctx, {"kind", "cover"});
    return CoverSequence::constant(
        cover_from_value(j.at("cover"), ctx + ".cover"));
  }
  if (kind == "periodic") {
    expect_fields(j, ctx, {"kind", "pattern"});
    const json& jp = read_array(j.at("pattern"), ctx + ".pattern");
    std::vector<OpenCover> covers;
    covers.reserve(jp.size());
    for (std::size_t i = 0; i < jp.size(); ++i) {
      covers.push_back(cover_from_value(
          jp[i], ctx + ".pattern[" + std::to_string(i) + "]"));
    }
    return construct(
        ctx, [&] { return CoverSequence::periodic(std::move(covers)); });
  }
  fail(ctx + ".kind", "unknown cover sequence kind \"" + kind + "\"");
}

}  // namespace nds
