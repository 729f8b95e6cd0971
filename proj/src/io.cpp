#include "factorlab/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "factorlab/error.hpp"

namespace factorlab {

using Json = nlohmann::ordered_json;

namespace {

Json parse_json(std::string_view text, const std::string& what) {
  try {
    return Json::parse(text.begin(), text.end(), nullptr, true, true);
  } catch (const Json::parse_error& e) {
    throw ValidationError(what + ": " + e.what());
  }
}

const Json& field(const Json& obj, const char* key, const std::string& what) {
  if (!obj.is_object() || !obj.contains(key))
    throw ValidationError(what + ": missing field '" + key + "'");
  return obj.at(key);
}

std::size_t as_index(const Json& v, const std::string& what) {
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw ValidationError(what + ": expected a nonnegative integer, got " + v.dump());
  return v.get<std::size_t>();
}

FiniteAlgebra algebra_from(const Json& j, std::size_t tuple_length) {
  const std::string name = j.contains("name") && j["name"].is_string()
                               ? j["name"].get<std::string>()
                               : std::string("unnamed");
  const std::string what = "algebra " + name;
  const std::size_t size = as_index(field(j, "size", what), what + " size");
  if (tuple_length == 0)
    tuple_length = j.contains("l") ? as_index(j["l"], what + " l") : 1;
  const Json& ops = field(j, "ops", what);
  if (!ops.is_object()) throw ValidationError(what + ": 'ops' must be an object");

  std::vector<OpSymbol> symbols;
  std::vector<std::vector<Element>> tables;
  for (const auto& [symbol, spec] : ops.items()) {
    const std::string where = what + " symbol '" + symbol + "'";
    const std::size_t arity = as_index(field(spec, "arity", where), where + " arity");
    const Json& table = field(spec, "table", where);
    if (!table.is_array()) throw ValidationError(where + ": table must be an array");
    std::vector<Element> entries;
    entries.reserve(table.size());
    for (std::size_t i = 0; i < table.size(); ++i)
      entries.push_back(static_cast<Element>(
          as_index(table[i], where + " entry " + std::to_string(i))));
    symbols.push_back({symbol, arity});
    tables.push_back(std::move(entries));
  }
  return FiniteAlgebra(name, Signature(std::move(symbols), tuple_length), size,
                       std::move(tables));
}

}  // namespace

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

FiniteAlgebra parse_algebra(std::string_view json_text, std::size_t tuple_length) {
  return algebra_from(parse_json(json_text, "algebra file"), tuple_length);
}

FiniteAlgebra load_algebra(const std::filesystem::path& path) {
  return algebra_from(parse_json(read_text(path), path.string()), 0);
}

std::string algebra_to_json(const FiniteAlgebra& a) {
  Json j;
  j["name"] = a.name();
  j["size"] = a.size();
  if (a.signature().tuple_length() != 1) j["l"] = a.signature().tuple_length();
  Json ops = Json::object();
  for (std::size_t op = 0; op < a.signature().size(); ++op) {
    const auto t = a.table(op);
    ops[a.signature()[op].name] = {{"arity", a.signature()[op].arity},
                                   {"table", std::vector<Element>(t.begin(), t.end())}};
  }
  j["ops"] = std::move(ops);
  return j.dump();
}

VarietyContext parse_context(std::string_view json_text, const std::filesystem::path& base_dir,
                             const PoolOverride& pool_override) {
  const Json j = parse_json(json_text, "context file");
  const std::string what = "context";
  const std::size_t l = j.contains("l") ? as_index(j["l"], "context l") : 1;
  const Json& gen = field(j, "generator", what);
  FiniteAlgebra generator = [&] {
    if (gen.is_string()) {
      const auto path = base_dir / gen.get<std::string>();
      return algebra_from(parse_json(read_text(path), path.string()), l);
    }
    return algebra_from(gen, l);
  }();

  auto terms = [&](const char* key) {
    const Json& list = field(j, key, what);
    if (!list.is_array()) throw ValidationError(std::string("context '") + key + "' must be a list");
    std::vector<Term> out;
    for (const auto& t : list) {
      if (!t.is_string()) throw ValidationError(std::string("context '") + key + "' entries must be strings");
      out.push_back(parse_term(t.get<std::string>(), generator.signature()));
    }
    return out;
  };
  std::vector<Term> zero = terms("zero");
  std::vector<Term> one = terms("one");
  VarietyContext ctx(std::move(generator), std::move(zero), std::move(one));

  PoolOptions pool;
  if (j.contains("pool")) {
    const Json& p = j["pool"];
    if (p.contains("depth")) pool.depth = as_index(p["depth"], "pool depth");
    if (p.contains("max_size")) pool.max_size = as_index(p["max_size"], "pool max_size");
  }
  if (pool_override.depth) pool.depth = *pool_override.depth;
  if (pool_override.max_size) pool.max_size = *pool_override.max_size;
  return ctx.with_pool(generate_pool(ctx, pool.max_size, pool.depth));
}

VarietyContext load_context(const std::filesystem::path& path,
                            const PoolOverride& pool_override) {
  return parse_context(read_text(path), path.parent_path(), pool_override);
}

ExistentialDnf load_formula(const std::filesystem::path& path, const VarietyContext& ctx) {
  return parse_formula(read_text(path), ctx.signature(), ctx.tuple_length());
}

}  // namespace factorlab
