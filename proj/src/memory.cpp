//===-- memory.cpp -------------------------------------------------------------===//

#include "smartgen/memory.hpp"

#include <cassert>

namespace smartgen {

const char* exceptionKindName(ExceptionKind k) {
  switch (k) {
  case ExceptionKind::ArrayOutOfBounds: return "ArrayOutOfBounds";
  case ExceptionKind::DividedByZero: return "DividedByZero";
  case ExceptionKind::FixedMemoryAddress: return "FixedMemoryAddress";
  case ExceptionKind::NullDereference: return "NullDereference";
  case ExceptionKind::UnboundVoidAlias: return "UnboundVoidAlias";
  }
  return "?";
}

std::optional<ExceptionKind> exceptionKindFromName(const std::string& name) {
  for (ExceptionKind k :
       {ExceptionKind::ArrayOutOfBounds, ExceptionKind::DividedByZero,
        ExceptionKind::FixedMemoryAddress, ExceptionKind::NullDereference,
        ExceptionKind::UnboundVoidAlias})
    if (name == exceptionKindName(k)) return k;
  return std::nullopt;
}

PointerValue PointerValue::nullPointer() {
  PointerValue p;
  p.null = true;
  return p;
}
PointerValue PointerValue::toObject(ObjectId obj, SymRef offset) {
  PointerValue p;
  p.owner = obj;
  p.offset = std::move(offset);
  return p;
}
PointerValue PointerValue::fixed(SymRef address) {
  if (sym::isConstZero(address)) return nullPointer();
  PointerValue p;
  p.fixedAddress = std::move(address);
  return p;
}

SVal SVal::makeScalar(SymRef v) {
  SVal s;
  s.kind = Kind::Scalar;
  s.scalar = std::move(v);
  return s;
}
SVal SVal::makePointer(PointerValue p) {
  SVal s;
  s.kind = Kind::Pointer;
  s.ptr = std::move(p);
  return s;
}

const LeafCell* MemoryObject::leafAt(uint32_t offset) const {
  uint32_t elemSize = totalSize / count;
  uint32_t inElement = offset % elemSize;
  for (const auto& leaf : *leaves)
    if (leaf.offset == inElement) return &leaf;
  return nullptr;
}

std::vector<LeafCell> computeLeaves(const Program& program, const TypeRef& type) {
  std::vector<LeafCell> out;
  switch (type->kind) {
  case TypeKind::Int:
  case TypeKind::Enum:
  case TypeKind::Pointer:
  case TypeKind::VoidPointer:
    out.push_back(LeafCell{0, type, ""});
    return out;
  case TypeKind::Array: {
    uint32_t stride = program.sizeOf(type->element);
    auto inner = computeLeaves(program, type->element);
    for (uint32_t i = 0; i < type->count; ++i)
      for (const auto& leaf : inner)
        out.push_back(LeafCell{i * stride + leaf.offset, leaf.type,
                               "[" + std::to_string(i) + "]" + leaf.suffix});
    return out;
  }
  case TypeKind::Record: {
    const RecordDecl* rec = program.findRecord(type->name);
    assert(rec && rec->layout.computed);
    for (size_t f = 0; f < rec->fields.size(); ++f) {
      uint32_t base = rec->layout.fieldOffsets[f].second;
      auto inner = computeLeaves(program, rec->fields[f].type);
      for (const auto& leaf : inner)
        out.push_back(LeafCell{base + leaf.offset, leaf.type,
                               "." + rec->fields[f].name + leaf.suffix});
    }
    return out;
  }
  case TypeKind::Void:
    assert(false && "void has no cells");
  }
  return out;
}

namespace {

SVal initialCellValue(const LeafCell& leaf, Origin origin, InitMode init,
                      const std::string& symbolName) {
  switch (leaf.type->kind) {
  case TypeKind::Int:
  case TypeKind::Enum: {
    VType vt = vtypeOf(leaf.type);
    bool symbolic = origin == Origin::Param || origin == Origin::Global ||
                    origin == Origin::Stub ||
                    (origin == Origin::Local && init == InitMode::Symbolic);
    if (symbolic) return SVal::makeScalar(sym::input(symbolName, vt));
    return SVal::makeScalar(sym::constant(0, vt));
  }
  case TypeKind::Pointer:
    // pointer cells start null; only direct pointer parameters get a fresh
    // pointee object, which the engine wires up itself
    return SVal::makePointer(PointerValue::nullPointer());
  case TypeKind::VoidPointer: {
    if (origin == Origin::Local && init == InitMode::Zero)
      return SVal::makePointer(PointerValue::nullPointer());
    return SVal::makePointer(PointerValue{}); // unbound until assigned
  }
  default:
    assert(false && "not a leaf type");
    return SVal::makeScalar(sym::constant(0, VType{32, true}));
  }
}

} // namespace

ObjectId allocate(MemoryState& state, const Program& program, const TypeRef& type,
                  uint32_t count, Origin origin, const std::string& name,
                  InitMode init, bool indexedNames) {
  assert(count >= 1);
  MemoryObject obj;
  obj.id = state.nextObject++;
  obj.elementType = type;
  obj.count = count;
  uint32_t elemSize = program.sizeOf(type);
  obj.totalSize = elemSize * count;
  obj.origin = origin;
  obj.name = name;
  obj.leaves = std::make_shared<const std::vector<LeafCell>>(
      computeLeaves(program, type));

  for (uint32_t i = 0; i < count; ++i) {
    std::string prefix = (count > 1 || indexedNames)
                             ? name + "[" + std::to_string(i) + "]"
                             : name;
    for (const auto& leaf : *obj.leaves) {
      std::string symbol = prefix + leaf.suffix;
      obj.cells[i * elemSize + leaf.offset] =
          initialCellValue(leaf, origin, init, symbol);
    }
  }

  ObjectId id = obj.id;
  if (type->kind == TypeKind::Record) {
    RecordBlockInfo block;
    block.start = 0;
    block.end = obj.totalSize;
    block.prev = state.lastRecordObject ? static_cast<int64_t>(state.lastRecordObject) : -1;
    if (state.lastRecordObject)
      state.recordBlocks[state.lastRecordObject].next = static_cast<int64_t>(id);
    state.recordBlocks[id] = block;
    state.lastRecordObject = id;
  }
  state.objects.emplace(id, std::move(obj));
  return id;
}

SVal readCell(const MemoryState& state, ObjectId obj, uint32_t offset) {
  const MemoryObject& o = state.object(obj);
  auto it = o.cells.find(offset);
  assert(it != o.cells.end() && "read from a non-cell offset");
  return it->second;
}

void writeCell(MemoryState& state, ObjectId obj, uint32_t offset, SVal value) {
  MemoryObject& o = state.object(obj);
  assert(o.cells.count(offset) && "write to a non-cell offset");
  o.cells[offset] = std::move(value);
}

PointerValue ptrOffset(const PointerValue& ptr, const SymRef& delta,
                       uint32_t elementSize) {
  if (ptr.null || ptr.unbound()) return ptr;
  VType u32{32, false};
  SymRef scaled = sym::mul(sym::promote(delta, u32),
                           sym::constant(elementSize, u32));
  if (ptr.fixedAddress) {
    PointerValue out = ptr;
    out.fixedAddress = sym::add(sym::promote(*ptr.fixedAddress, u32), scaled);
    return out;
  }
  PointerValue out = ptr;
  out.offset = sym::add(sym::promote(ptr.offset, u32), scaled);
  return out;
}

void bindVoidAlias(MemoryState& state, ObjectId slotObj, uint32_t slotOffset,
                   ObjectId target, TypeRef elementType) {
  state.voidTable[MemoryState::slotKey(slotObj, slotOffset)] =
      VoidAlias{target, std::move(elementType)};
}

const VoidAlias* lookupVoidAlias(const MemoryState& state, ObjectId slotObj,
                                 uint32_t slotOffset) {
  auto it = state.voidTable.find(MemoryState::slotKey(slotObj, slotOffset));
  return it == state.voidTable.end() ? nullptr : &it->second;
}

//===----------------------------------------------------------------------===//
// checked access
//===----------------------------------------------------------------------===//

namespace {

SymRef guardAnd(const SymRef& guard, SymRef cond) {
  if (!guard) return cond;
  return sym::logAnd(guard, std::move(cond));
}
SymRef guardImplies(const SymRef& guard, SymRef cond) {
  if (!guard) return cond;
  return sym::logOr(sym::logNot(guard), std::move(cond));
}

// Resolves the access; on success fills concreteOffset. Shared by load/store.
AccessResult resolve(const MemoryState& state, const PointerValue& ptr,
                     uint32_t accessSize, const SymRef& guard,
                     FeasibilityOracle& oracle, uint32_t* concreteOffset) {
  AccessResult r;
  if (ptr.unbound()) {
    r.fault = ExceptionKind::UnboundVoidAlias;
    r.faultDefinite = true;
    return r;
  }
  if (ptr.null) {
    r.fault = ExceptionKind::NullDereference;
    r.faultDefinite = true;
    return r;
  }
  if (ptr.fixedAddress) {
    r.fault = ExceptionKind::FixedMemoryAddress;
    r.faultDefinite = true;
    return r;
  }

  const MemoryObject& obj = state.object(*ptr.owner);
  assert(obj.totalSize >= accessSize);
  uint32_t limit = obj.totalSize - accessSize; // inclusive upper bound
  VType u32{32, false};
  SymRef offset = sym::promote(ptr.offset, u32);

  if (sym::isConst(offset)) {
    uint32_t off = offset->bits;
    if (off > limit) {
      r.fault = ExceptionKind::ArrayOutOfBounds;
      r.faultDefinite = true;
      return r;
    }
    *concreteOffset = off;
    r.ok = true;
    return r;
  }

  // symbolic offset: negative offsets appear as huge unsigned values, so a
  // single unsigned comparison covers both directions
  SymRef limitConst = sym::constant(limit, u32);
  SymRef inBounds = sym::le(offset, limitConst);
  SymRef outOfBounds = sym::logNot(inBounds);

  auto oob = oracle.query(guardAnd(guard, outOfBounds));
  if (oob.verdict == FeasibilityOracle::Verdict::Feasible) {
    r.fault = ExceptionKind::ArrayOutOfBounds;
    r.faultWitness = oob.model;
  } else if (oob.verdict == FeasibilityOracle::Verdict::Unknown) {
    r.solverUnknown = true; // note it, continue optimistically in-bounds
  }

  auto inb = oracle.query(guardAnd(guard, inBounds));
  if (inb.verdict == FeasibilityOracle::Verdict::Infeasible) {
    if (r.fault) {
      r.faultDefinite = true; // faulting is the only way through
      return r;
    }
    r.pathDead = true;
    return r;
  }
  if (inb.verdict == FeasibilityOracle::Verdict::Unknown) {
    r.solverUnknown = true;
    return r;
  }

  // concretize the offset under the in-bounds model
  auto offValue = sym::eval(offset, inb.model);
  assert(offValue && "offset evaluation cannot divide by zero here");
  uint32_t off = *offValue;
  assert(off <= limit);
  r.pathConstraints.push_back(guardImplies(guard, inBounds));
  r.pathConstraints.push_back(
      guardImplies(guard, sym::eq(offset, sym::constant(off, u32))));
  *concreteOffset = off;
  r.ok = true;
  return r;
}

} // namespace

AccessResult loadChecked(const MemoryState& state, const PointerValue& ptr,
                         uint32_t accessSize, const SymRef& guard,
                         FeasibilityOracle& oracle) {
  uint32_t offset = 0;
  AccessResult r = resolve(state, ptr, accessSize, guard, oracle, &offset);
  if (!r.ok) return r;
  r.resolvedOffset = offset;
  r.value = readCell(state, *ptr.owner, offset);
  return r;
}

AccessResult storeChecked(MemoryState& state, const PointerValue& ptr,
                          uint32_t accessSize, const SVal& value,
                          const SymRef& guard, FeasibilityOracle& oracle) {
  uint32_t offset = 0;
  AccessResult r = resolve(state, ptr, accessSize, guard, oracle, &offset);
  if (!r.ok) return r;
  r.resolvedOffset = offset;
  writeCell(state, *ptr.owner, offset, value);
  return r;
}

} // namespace smartgen
