//===-- memory.hpp - simulated allocation and pointer values ---------------===//
//
// Whole-memory simulation: every variable lives in a MemoryObject whose leaf
// cells hold symbolic scalars or pointer values. Pointers carry their owner
// object, a (possibly symbolic) byte offset, a null mark, or a fixed raw
// address; dereferencing checks bounds against the owner's total size.
// void*-typed slots additionally record the original type of the value they
// alias in a side table, and reads through void* resolve via that alias.
//
// MemoryState is a value type: copying a state yields a fully independent
// snapshot (cells are immutable nodes, so copies share structure safely).
//
//===----------------------------------------------------------------------===//
#pragma once

#include "smartgen/ast.hpp"
#include "smartgen/symvalue.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace smartgen {

using ObjectId = uint32_t;

enum class ExceptionKind {
  ArrayOutOfBounds,
  DividedByZero,
  FixedMemoryAddress,
  NullDereference,
  UnboundVoidAlias,
};
const char* exceptionKindName(ExceptionKind k);
std::optional<ExceptionKind> exceptionKindFromName(const std::string& name);

struct PointerValue {
  std::optional<ObjectId> owner;
  SymRef offset;                 // byte offset within owner (meaningful with owner)
  bool null = false;             // explicit null (literal 0)
  std::optional<SymRef> fixedAddress; // raw address value, never dereferenceable

  bool unbound() const { return !owner && !null && !fixedAddress; }
  static PointerValue nullPointer();
  static PointerValue toObject(ObjectId obj, SymRef offset);
  static PointerValue fixed(SymRef address);
};

// a cell or expression value: scalar bits or a pointer
struct SVal {
  enum class Kind { Scalar, Pointer } kind = Kind::Scalar;
  SymRef scalar;
  PointerValue ptr;
  TypeRef voidAlias; // pointee type carried by a value held in a void* slot

  static SVal makeScalar(SymRef v);
  static SVal makePointer(PointerValue p);
  bool isScalar() const { return kind == Kind::Scalar; }
};

enum class Origin { Param, Global, Local, Stub, AllocSite };

// flattened element shape: one entry per scalar/pointer cell
struct LeafCell {
  uint32_t offset = 0;
  TypeRef type; // Int/Enum/Pointer/VoidPointer
  std::string suffix;
};

std::vector<LeafCell> computeLeaves(const Program& program, const TypeRef& type);

struct MemoryObject {
  ObjectId id = 0;
  TypeRef elementType;
  uint32_t count = 1;
  uint32_t totalSize = 0;
  std::map<uint32_t, SVal> cells; // leaf offset -> value
  Origin origin = Origin::Local;
  std::string name;
  std::shared_ptr<const std::vector<LeafCell>> leaves; // per element, shared

  const LeafCell* leafAt(uint32_t offset) const;
};

struct VoidAlias {
  ObjectId object = 0;
  TypeRef elementType;
};

// start/end and neighbor links for record allocations
struct RecordBlockInfo {
  uint32_t start = 0;
  uint32_t end = 0;
  int64_t prev = -1; // ObjectId or -1
  int64_t next = -1;
};

enum class InitMode { Zero, Symbolic };

struct MemoryState {
  std::map<ObjectId, MemoryObject> objects;
  std::map<uint64_t, VoidAlias> voidTable; // slot key -> alias
  std::map<ObjectId, RecordBlockInfo> recordBlocks;
  ObjectId nextObject = 1;
  ObjectId lastRecordObject = 0; // tail of the record-block chain

  static uint64_t slotKey(ObjectId obj, uint32_t offset) {
    return (static_cast<uint64_t>(obj) << 32) | offset;
  }

  const MemoryObject& object(ObjectId id) const { return objects.at(id); }
  MemoryObject& object(ObjectId id) { return objects.at(id); }
};

// Allocates count elements of the given type. Param/Global/Stub origins get
// fresh input symbols named name, name[i], name.field...; locals are
// zero-initialized under InitMode::Zero. Pointer cells initialize to null in
// both modes; void* cells are unbound for inputs and null for locals.
// indexedNames forces name[0]-style symbols even for single-element objects
// (used for pointee objects, which are conceptually one-element arrays)
ObjectId allocate(MemoryState& state, const Program& program, const TypeRef& type,
                  uint32_t count, Origin origin, const std::string& name,
                  InitMode init, bool indexedNames = false);

SVal readCell(const MemoryState& state, ObjectId obj, uint32_t offset);
void writeCell(MemoryState& state, ObjectId obj, uint32_t offset, SVal value);

// pointer arithmetic: offset' = offset + delta * elementSize (wraps at 32
// bits). Null/fixed pointers pass through and fault at the eventual use.
PointerValue ptrOffset(const PointerValue& ptr, const SymRef& delta,
                       uint32_t elementSize);

void bindVoidAlias(MemoryState& state, ObjectId slotObj, uint32_t slotOffset,
                   ObjectId target, TypeRef elementType);
const VoidAlias* lookupVoidAlias(const MemoryState& state, ObjectId slotObj,
                                 uint32_t slotOffset);

//===----------------------------------------------------------------------===//
// checked access
//===----------------------------------------------------------------------===//

// Answers "is this condition satisfiable together with the current path?"
// The engine backs this with the solver; tests may use brute force.
class FeasibilityOracle {
public:
  virtual ~FeasibilityOracle() = default;
  enum class Verdict { Feasible, Infeasible, Unknown };
  struct Answer {
    Verdict verdict = Verdict::Unknown;
    Model model; // populated when Feasible
  };
  virtual Answer query(const SymRef& condition) = 0;
};

struct AccessResult {
  bool ok = false; // access performed; `value` valid for loads
  SVal value;
  uint32_t resolvedOffset = 0; // concrete cell offset when ok
  std::optional<ExceptionKind> fault;
  bool faultDefinite = false; // fault occurs on every model of the path
  Model faultWitness;         // trigger for non-definite faults
  std::vector<SymRef> pathConstraints; // conjuncts the survivor must adopt
  bool pathDead = false;      // no model continues past this access
  bool solverUnknown = false; // bounds undecided; state must be dropped
};

// Checked load/store through a pointer. `guard` (nullable) is the condition
// under which this access executes at all (short-circuit context); bounds
// queries and surviving constraints are guarded by it. `accessSize` is the
// byte size of the accessed leaf.
AccessResult loadChecked(const MemoryState& state, const PointerValue& ptr,
                         uint32_t accessSize, const SymRef& guard,
                         FeasibilityOracle& oracle);
AccessResult storeChecked(MemoryState& state, const PointerValue& ptr,
                          uint32_t accessSize, const SVal& value,
                          const SymRef& guard, FeasibilityOracle& oracle);

} // namespace smartgen
