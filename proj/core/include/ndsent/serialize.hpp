#pragma once

#include <memory>
#include <string>

#include "ndsent/covers.hpp"
#include "ndsent/measure.hpp"
#include "ndsent/partition.hpp"
#include "ndsent/sequences.hpp"
#include "ndsent/system.hpp"

namespace nds {

// JSON text round-trips for the core value types.
//
// Output is deterministic: object keys are emitted in sorted order and every
// rational is written exactly in the "p/q" text form, so serializing equal
// objects yields byte-identical text.  Parsers are strict: a missing field,
// an unknown field, a malformed rational, or a value rejected by the target
// type's constructor raises ConfigError (never a silent default).
//
// Not everything is serializable: power systems are materialized lazily from
// a base system and have no finite description, and programmatic partition
// sequences are defined by code.  Asking to serialize either raises
// ConfigError.

std::string system_to_json(const NDSystem& sys);
// NDSystem is immovable (it owns a cache mutex), hence the shared_ptr.
std::shared_ptr<const NDSystem> system_from_json(const std::string& text);

std::string measure_to_json(const PwConstMeasure& mu);
PwConstMeasure measure_from_json(const std::string& text);

std::string partition_to_json(const Partition& p);
Partition partition_from_json(const std::string& text);

std::string partition_sequence_to_json(const PartitionSequence& ps);
PartitionSequence partition_sequence_from_json(const std::string& text);

std::string cover_sequence_to_json(const CoverSequence& cs);
CoverSequence cover_sequence_from_json(const std::string& text);

}  // namespace nds
