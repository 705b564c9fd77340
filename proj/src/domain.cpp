#include "typal/domain.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "typal/pretty.hpp"

namespace typal {

namespace {

constexpr uint64_t kSat = std::numeric_limits<uint64_t>::max();

uint64_t sat_mul(uint64_t a, uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > kSat / b) return kSat;
  return a * b;
}

uint64_t sat_add(uint64_t a, uint64_t b) { return a > kSat - b ? kSat : a + b; }

uint64_t sat_pow(uint64_t base, uint64_t exp) {
  uint64_t r = 1;
  for (uint64_t i = 0; i < exp; i++) {
    r = sat_mul(r, base);
    if (r == kSat) return kSat;
  }
  return r;
}

uint64_t sat_pow2(uint64_t exp) { return exp >= 64 ? kSat : (1ull << exp); }

}  // namespace

bool is_lowered_type(const TypeExpr& t) {
  if (t.kind == TypeKind::Record || t.kind == TypeKind::Union || t.kind == TypeKind::Named)
    return false;
  for (const auto& a : t.args)
    if (!is_lowered_type(a)) return false;
  return true;
}

uint64_t dom_size(const TypeExpr& t) {
  switch (t.kind) {
    case TypeKind::Bool:
      return 2;
    case TypeKind::Int:
      return static_cast<uint64_t>(t.hi - t.lo + 1);
    case TypeKind::Enum:
      return t.names.size();
    case TypeKind::Tuple: {
      uint64_t s = 1;
      for (const auto& c : t.args) s = sat_mul(s, dom_size(c));
      return s;
    }
    case TypeKind::Set:
      return sat_pow2(dom_size(t.elem()));
    case TypeKind::Array:
      return sat_pow(dom_size(t.value()), dom_size(t.key()));
    default:
      throw LowerError("dom_size on an unlowered type: " + type_to_string(t));
  }
}

uint64_t width_of(const TypeExpr& t) {
  switch (t.kind) {
    case TypeKind::Bool:
      return 1;
    case TypeKind::Int:
      return static_cast<uint64_t>(t.hi - t.lo + 1);
    case TypeKind::Enum:
      return t.names.size();
    case TypeKind::Tuple:
    case TypeKind::Record: {
      uint64_t s = 0;
      for (const auto& c : t.args) s = sat_add(s, width_of(c));
      return s;
    }
    case TypeKind::Union: {
      uint64_t s = t.names.size();
      for (const auto& c : t.args) s = sat_add(s, width_of(c));
      return s;
    }
    case TypeKind::Set:
      return dom_size(t.elem());
    case TypeKind::Array:
      return sat_mul(dom_size(t.key()), width_of(t.value()));
    case TypeKind::Named:
      throw LowerError("width_of on an unresolved type name: " + t.names[0]);
  }
  return 0;
}

std::vector<Value> dom_values(const TypeExpr& t, uint64_t cap) {
  const uint64_t n = dom_size(t);
  if (n > cap) {
    std::ostringstream os;
    os << "domain of " << type_to_string(t) << " has " << (n == kSat ? std::string(">2^64") : std::to_string(n))
       << " values, above the cap of " << cap;
    throw CapError(os.str());
  }
  std::vector<Value> out;
  out.reserve(n);
  for (uint64_t r = 0; r < n; r++) out.push_back(value_at(t, r));
  return out;
}

uint64_t rank_of(const TypeExpr& t, const Value& v) {
  switch (t.kind) {
    case TypeKind::Bool:
      return v.b ? 1 : 0;
    case TypeKind::Int:
      return static_cast<uint64_t>(v.i - t.lo);
    case TypeKind::Enum: {
      for (size_t i = 0; i < t.names.size(); i++)
        if (t.names[i] == v.name) return i;
      throw EvalError(EvalErrorKind::Other, "enum item not in type: " + v.name);
    }
    case TypeKind::Tuple: {
      uint64_t r = 0;
      for (size_t i = 0; i < t.args.size(); i++)
        r = r * dom_size(t.args[i]) + rank_of(t.args[i], v.elems[i]);
      return r;
    }
    case TypeKind::Set: {
      // A subset ranks as the tuple of membership bits, element 0 outermost.
      const uint64_t k = dom_size(t.elem());
      uint64_t r = 0;
      for (const auto& e : v.elems) {
        const uint64_t er = rank_of(t.elem(), e);
        r |= 1ull << (k - 1 - er);
      }
      return r;
    }
    case TypeKind::Array: {
      uint64_t r = 0;
      const uint64_t s = dom_size(t.value());
      for (const auto& e : v.elems) r = r * s + rank_of(t.value(), e);
      return r;
    }
    default:
      throw LowerError("rank_of on an unlowered type");
  }
}

Value value_at(const TypeExpr& t, uint64_t rank) {
  switch (t.kind) {
    case TypeKind::Bool:
      return Value::boolean(rank != 0);
    case TypeKind::Int:
      return Value::integer(t.lo + static_cast<long long>(rank));
    case TypeKind::Enum:
      return Value::enum_item(t.names[rank]);
    case TypeKind::Tuple: {
      std::vector<Value> comps(t.args.size());
      for (size_t i = t.args.size(); i-- > 0;) {
        const uint64_t s = dom_size(t.args[i]);
        comps[i] = value_at(t.args[i], rank % s);
        rank /= s;
      }
      return Value::tuple(std::move(comps));
    }
    case TypeKind::Set: {
      const uint64_t k = dom_size(t.elem());
      std::vector<Value> elems;
      for (uint64_t er = 0; er < k; er++)
        if (rank & (1ull << (k - 1 - er))) elems.push_back(value_at(t.elem(), er));
      return Value::set(std::move(elems));
    }
    case TypeKind::Array: {
      const uint64_t k = dom_size(t.key());
      const uint64_t s = dom_size(t.value());
      std::vector<Value> elems(k);
      for (uint64_t i = k; i-- > 0;) {
        elems[i] = value_at(t.value(), rank % s);
        rank /= s;
      }
      return Value::array(std::move(elems));
    }
    default:
      throw LowerError("value_at on an unlowered type");
  }
}

Value first_value(const TypeExpr& t) {
  switch (t.kind) {
    case TypeKind::Bool:
      return Value::boolean(false);
    case TypeKind::Int:
      return Value::integer(t.lo);
    case TypeKind::Enum:
      return Value::enum_item(t.names[0]);
    case TypeKind::Tuple: {
      std::vector<Value> comps;
      for (const auto& c : t.args) comps.push_back(first_value(c));
      return Value::tuple(std::move(comps));
    }
    case TypeKind::Set:
      return Value::set({});
    case TypeKind::Array: {
      std::vector<Value> elems(dom_size(t.key()), first_value(t.value()));
      return Value::array(std::move(elems));
    }
    case TypeKind::Record: {
      Value out;
      out.kind = ValueKind::Record;
      out.names = t.names;
      for (const auto& a : t.args) out.elems.push_back(first_value(a));
      return out;
    }
    case TypeKind::Union: {
      Value out;
      out.kind = ValueKind::Union;
      out.name = t.names[0];
      out.elems.push_back(first_value(t.args[0]));
      return out;
    }
    case TypeKind::Named:
      throw LowerError("first_value on an unresolved type name");
  }
  throw LowerError("unreachable");
}

Value check_literal(const TypeExpr& t, const Value& v, SourcePos pos) {
  auto mismatch = [&](const std::string& what) -> TypeError {
    return TypeError("literal " + value_to_string(v) + " does not match type " +
                         type_to_string(t) + ": " + what,
                     pos);
  };
  switch (t.kind) {
    case TypeKind::Bool:
      if (v.kind != ValueKind::Bool) throw mismatch("expected bool");
      return v;
    case TypeKind::Int:
      if (v.kind != ValueKind::Int) throw mismatch("expected integer");
      if (v.i < t.lo || v.i > t.hi) throw mismatch("out of range");
      return v;
    case TypeKind::Enum: {
      if (v.kind != ValueKind::Enum) throw mismatch("expected enum item");
      if (std::find(t.names.begin(), t.names.end(), v.name) == t.names.end())
        throw mismatch("unknown item " + v.name);
      return v;
    }
    case TypeKind::Tuple: {
      if (v.kind != ValueKind::Tuple || v.elems.size() != t.args.size())
        throw mismatch("expected tuple of arity " + std::to_string(t.args.size()));
      std::vector<Value> comps;
      for (size_t i = 0; i < t.args.size(); i++)
        comps.push_back(check_literal(t.args[i], v.elems[i], pos));
      return Value::tuple(std::move(comps));
    }
    case TypeKind::Record: {
      if (v.kind != ValueKind::Record) throw mismatch("expected record literal");
      if (v.names.size() != t.names.size()) throw mismatch("wrong field count");
      std::vector<Value> comps;
      for (size_t i = 0; i < t.names.size(); i++) {
        auto it = std::find(v.names.begin(), v.names.end(), t.names[i]);
        if (it == v.names.end()) throw mismatch("missing field " + t.names[i]);
        comps.push_back(check_literal(t.args[i], v.elems[it - v.names.begin()], pos));
      }
      Value out;
      out.kind = ValueKind::Record;
      out.names = t.names;
      out.elems = std::move(comps);
      return out;
    }
    case TypeKind::Union: {
      if (v.kind != ValueKind::Union) throw mismatch("expected union literal");
      auto it = std::find(t.names.begin(), t.names.end(), v.name);
      if (it == t.names.end()) throw mismatch("unknown tag " + v.name);
      Value out;
      out.kind = ValueKind::Union;
      out.name = v.name;
      out.elems.push_back(check_literal(t.args[it - t.names.begin()], v.elems[0], pos));
      return out;
    }
    case TypeKind::Set: {
      // Enum items parse as Value::Enum but a set literal {a,b} could also be
      // intended; kinds must match exactly here.
      if (v.kind != ValueKind::Set) throw mismatch("expected set literal");
      std::vector<Value> elems;
      for (const auto& e : v.elems) elems.push_back(check_literal(t.elem(), e, pos));
      std::sort(elems.begin(), elems.end(), [&](const Value& a, const Value& b) {
        return rank_of(t.elem(), a) < rank_of(t.elem(), b);
      });
      elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
      return Value::set(std::move(elems));
    }
    case TypeKind::Array: {
      if (v.kind != ValueKind::Array) throw mismatch("expected array literal");
      const uint64_t k = dom_size(t.key());
      if (v.elems.size() != k)
        throw mismatch("expected " + std::to_string(k) + " elements (one per key)");
      std::vector<Value> elems;
      for (const auto& e : v.elems) elems.push_back(check_literal(t.value(), e, pos));
      return Value::array(std::move(elems));
    }
    case TypeKind::Named:
      throw LowerError("check_literal on an unresolved type name");
  }
  return v;
}

namespace {

void encode_rec(const TypeExpr& t, const Value& v, std::vector<bool>& out) {
  switch (t.kind) {
    case TypeKind::Bool:
      out.push_back(v.b);
      break;
    case TypeKind::Int: {
      for (long long x = t.lo; x <= t.hi; x++) out.push_back(x == v.i);
      break;
    }
    case TypeKind::Enum: {
      for (const auto& n : t.names) out.push_back(n == v.name);
      break;
    }
    case TypeKind::Tuple: {
      for (size_t i = 0; i < t.args.size(); i++) encode_rec(t.args[i], v.elems[i], out);
      break;
    }
    case TypeKind::Set: {
      const uint64_t k = dom_size(t.elem());
      std::vector<bool> bits(k, false);
      for (const auto& e : v.elems) bits[rank_of(t.elem(), e)] = true;
      out.insert(out.end(), bits.begin(), bits.end());
      break;
    }
    case TypeKind::Array: {
      for (const auto& e : v.elems) encode_rec(t.value(), e, out);
      break;
    }
    default:
      throw LowerError("encode_literal on an unlowered type");
  }
}

Value decode_rec(const TypeExpr& t, const std::vector<bool>& leaves, size_t& at,
                 const std::string& path) {
  auto one_hot = [&](size_t n) -> size_t {
    size_t idx = 0, count = 0;
    for (size_t i = 0; i < n; i++) {
      if (leaves[at + i]) {
        idx = i;
        count++;
      }
    }
    if (count != 1)
      throw EvalError(EvalErrorKind::ExactlyOneViolation,
                      "exactly-one violated at " + path + " (" + std::to_string(count) +
                          " bits set in a " + std::to_string(n) + "-bit slot)");
    at += n;
    return idx;
  };
  switch (t.kind) {
    case TypeKind::Bool:
      return Value::boolean(leaves[at++]);
    case TypeKind::Int:
      return Value::integer(t.lo + static_cast<long long>(one_hot(width_of(t))));
    case TypeKind::Enum:
      return Value::enum_item(t.names[one_hot(t.names.size())]);
    case TypeKind::Tuple: {
      std::vector<Value> comps;
      for (size_t i = 0; i < t.args.size(); i++)
        comps.push_back(decode_rec(t.args[i], leaves, at, path + "." + std::to_string(i + 1)));
      return Value::tuple(std::move(comps));
    }
    case TypeKind::Set: {
      const uint64_t k = dom_size(t.elem());
      std::vector<Value> elems;
      for (uint64_t i = 0; i < k; i++)
        if (leaves[at + i]) elems.push_back(value_at(t.elem(), i));
      at += k;
      return Value::set(std::move(elems));
    }
    case TypeKind::Array: {
      const uint64_t k = dom_size(t.key());
      std::vector<Value> elems;
      for (uint64_t i = 0; i < k; i++)
        elems.push_back(decode_rec(t.value(), leaves, at, path + "[" + std::to_string(i) + "]"));
      return Value::array(std::move(elems));
    }
    default:
      throw LowerError("decode on an unlowered type");
  }
}

void layout_rec(const TypeExpr& t, size_t& at, SlotLayout& out) {
  switch (t.kind) {
    case TypeKind::Bool:
      out.free_bits.push_back(at++);
      break;
    case TypeKind::Int:
    case TypeKind::Enum: {
      const size_t w = width_of(t);
      std::vector<size_t> g(w);
      for (size_t i = 0; i < w; i++) g[i] = at + i;
      out.groups.push_back(std::move(g));
      at += w;
      break;
    }
    case TypeKind::Tuple:
      for (const auto& c : t.args) layout_rec(c, at, out);
      break;
    case TypeKind::Set: {
      const uint64_t k = dom_size(t.elem());
      for (uint64_t i = 0; i < k; i++) out.free_bits.push_back(at++);
      break;
    }
    case TypeKind::Array: {
      const uint64_t k = dom_size(t.key());
      for (uint64_t i = 0; i < k; i++) layout_rec(t.value(), at, out);
      break;
    }
    default:
      throw LowerError("slot_layout on an unlowered type");
  }
}

}  // namespace

std::vector<bool> encode_literal(const TypeExpr& t, const Value& v) {
  std::vector<bool> out;
  encode_rec(t, v, out);
  return out;
}

Value decode_leaves(const TypeExpr& t, const std::vector<bool>& leaves, const std::string& path) {
  size_t at = 0;
  Value v = decode_rec(t, leaves, at, path);
  return v;
}

SlotLayout slot_layout(const TypeExpr& t) {
  SlotLayout out;
  size_t at = 0;
  layout_rec(t, at, out);
  return out;
}

}  // namespace typal
