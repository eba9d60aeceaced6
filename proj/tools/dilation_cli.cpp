// Command line front end: every operation of the library behind one binary
// with table, json and csv output modes.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dilation/dickson.hpp"
#include "dilation/field.hpp"
#include "dilation/monoid.hpp"
#include "dilation/separating.hpp"
#include "dilation/structure.hpp"
#include "dilation/subspace.hpp"

using ojson = nlohmann::ordered_json;
using namespace dilation;

namespace {

enum class Format { Table, Json, Csv };

struct CommonOpts {
  std::string format = "table";
  std::string out_path;
  int jobs = 0; // 0: take DILATION_JOBS, else 1

  Format fmt() const {
    if (format == "json") return Format::Json;
    if (format == "csv") return Format::Csv;
    return Format::Table;
  }
  int effective_jobs() const {
    if (jobs > 0) return jobs;
    if (const char* env = std::getenv("DILATION_JOBS")) {
      const int v = std::atoi(env);
      if (v > 0) return v;
    }
    return 1;
  }
};

void add_common(CLI::App* sub, CommonOpts& opts) {
  sub->add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"table", "json", "csv"}))
      ->capture_default_str();
  sub->add_option("--out", opts.out_path, "Write output to a file instead of stdout");
  sub->add_option("--jobs", opts.jobs,
                  "Worker threads (default from DILATION_JOBS, else 1); "
                  "used by conjecture verification");
}

void emit(const CommonOpts& opts, const std::string& text) {
  if (opts.out_path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(opts.out_path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + opts.out_path);
  f << text;
}

std::string json_text(const ojson& j) { return j.dump(2) + "\n"; }

template <typename T>
std::string join(const std::vector<T>& xs, const char* sep) {
  std::ostringstream os;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) os << sep;
    os << xs[i];
  }
  return os.str();
}

std::string join_str(const std::vector<std::string>& xs, const char* sep) {
  std::ostringstream os;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) os << sep;
    os << xs[i];
  }
  return os.str();
}

ojson codes_json(const Field& F, const Subspace& V) {
  ojson arr = ojson::array();
  for (const std::uint64_t c : V.row_codes(F.p())) arr.push_back(c);
  return arr;
}

std::string codes_str(const Field& F, const Subspace& V) {
  std::ostringstream os;
  const auto codes = V.row_codes(F.p());
  for (std::size_t i = 0; i < codes.size(); ++i) os << (i ? " " : "") << codes[i];
  return os.str();
}

ojson partition_json(const Partition& part) {
  ojson arr = ojson::array();
  for (const int x : part) arr.push_back(x);
  return arr;
}

std::vector<std::string> dickson_strings(const DicksonVector& dv) {
  std::vector<std::string> out;
  for (int i = 1; i <= dv.r; ++i) out.push_back(dv.get(i).str());
  return out;
}

Basis parse_basis(const Field& F, const std::string& csv) {
  Basis out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw std::invalid_argument("empty basis entry");
    out.push_back(F.from_string(item));
  }
  if (out.empty()) throw std::invalid_argument("basis must contain at least one element");
  return out;
}

std::string poly_str(std::int64_t /*p*/, const std::vector<int>& coeffs) {
  std::ostringstream os;
  bool first = true;
  for (int d = static_cast<int>(coeffs.size()) - 1; d >= 0; --d) {
    const int c = coeffs[static_cast<std::size_t>(d)];
    if (c == 0) continue;
    if (!first) os << "+";
    first = false;
    if (d == 0 || c != 1) os << c;
    if (d >= 1) {
      os << "t";
      if (d > 1) os << "^" << d;
    }
  }
  if (first) os << "0";
  return os.str();
}

ojson exponents_json(const ExponentVec& v) {
  ojson arr = ojson::array();
  for (const std::int64_t x : v.a) arr.push_back(x);
  return arr;
}

std::string kind_name(InvariantKind k) {
  switch (k) {
    case InvariantKind::Vi: return "v_i";
    case InvariantKind::Vij: return "v_ij";
    default: return "u_ij";
  }
}

// ---------------------------------------------------------------- field-info

struct FieldInfoArgs {
  std::int64_t p = 2;
  int n = 1;
  CommonOpts common;
};

int run_field_info(const FieldInfoArgs& a) {
  const FieldPtr F = Field::make(a.p, a.n);
  ojson j;
  j["command"] = "field-info";
  j["p"] = a.p;
  j["n"] = a.n;
  j["order"] = F->order();
  ojson mod = ojson::array();
  for (const int c : F->modulus()) mod.push_back(c);
  j["modulus"] = mod;
  j["modulus_str"] = poly_str(a.p, F->modulus());
  j["generator"] = F->gen().str();
  ojson subs = ojson::array();
  for (int m = 1; m <= a.n; ++m) {
    if (a.n % m != 0) continue;
    ojson s;
    s["m"] = m;
    std::uint64_t q = 1;
    for (int k = 0; k < m; ++k) q *= static_cast<std::uint64_t>(a.p);
    s["order"] = q;
    subs.push_back(s);
  }
  j["subfields"] = subs;

  switch (a.common.fmt()) {
    case Format::Json:
      emit(a.common, json_text(j));
      break;
    case Format::Csv: {
      std::ostringstream os;
      os << "p,n,order,modulus\n";
      std::string digits;
      for (const int c : F->modulus()) digits += "0123456789abcdef"[c];
      os << a.p << "," << a.n << "," << F->order() << "," << digits << "\n";
      emit(a.common, os.str());
      break;
    }
    default: {
      std::ostringstream os;
      os << "field GF(" << a.p << "," << a.n << "), order " << F->order() << "\n";
      os << "modulus: " << poly_str(a.p, F->modulus()) << "\n";
      os << "generator: " << F->gen().str() << "\n";
      os << "subfield orders:";
      for (const auto& s : j["subfields"]) os << " " << s["order"].get<std::uint64_t>();
      os << "\n";
      emit(a.common, os.str());
    }
  }
  return 0;
}

// ----------------------------------------------------------------- subgroups

struct SubgroupsArgs {
  std::int64_t p = 2;
  int n = 1;
  int r = 1;
  CommonOpts common;
};

int run_subgroups(const SubgroupsArgs& a) {
  const FieldPtr F = Field::make(a.p, a.n);
  const std::vector<Subspace> all = enumerate_subspaces(*F, a.r);
  switch (a.common.fmt()) {
    case Format::Json: {
      ojson j;
      j["command"] = "subgroups";
      j["p"] = a.p;
      j["n"] = a.n;
      j["r"] = a.r;
      j["count"] = all.size();
      ojson arr = ojson::array();
      for (const Subspace& V : all) {
        ojson e;
        e["rows"] = codes_json(*F, V);
        arr.push_back(e);
      }
      j["subgroups"] = arr;
      emit(a.common, json_text(j));
      break;
    }
    case Format::Csv: {
      std::ostringstream os;
      os << "index,rows\n";
      for (std::size_t i = 0; i < all.size(); ++i)
        os << i << "," << codes_str(*F, all[i]) << "\n";
      emit(a.common, os.str());
      break;
    }
    default: {
      std::ostringstream os;
      os << "rank-" << a.r << " subgroups of GF(" << a.p << "," << a.n
         << "): " << all.size() << "\n";
      for (std::size_t i = 0; i < all.size(); ++i)
        os << "  " << i << ": [" << codes_str(*F, all[i]) << "]\n";
      emit(a.common, os.str());
    }
  }
  return 0;
}

// -------------------------------------------------------------------- orbits

struct OrbitsArgs {
  std::int64_t p = 2;
  int n = 1;
  int r = 1;
  CommonOpts common;
};

int run_orbits(const OrbitsArgs& a) {
  const FieldPtr F = Field::make(a.p, a.n);
  const OrbitTable table = dilation_orbit_reps(*F, a.r);
  PartitionCache cache;
  cache.p = a.p;

  struct Row {
    std::string rep;
    ojson rep_json;
    std::uint64_t orbit_size;
    std::uint64_t stabilizer_q;
    Partition partition;
    std::vector<std::string> dickson;
  };
  std::vector<Row> rows;
  std::uint64_t total = 0;
  for (const OrbitEntry& e : table.entries) {
    Row row;
    row.rep = codes_str(*F, e.rep);
    row.rep_json = codes_json(*F, e.rep);
    row.orbit_size = e.orbit_size;
    row.stabilizer_q = e.stabilizer_q;
    row.partition = partition_of(*F, e.rep, cache);
    row.dickson = dickson_strings(dickson_eval(basis_of(*F, e.rep)));
    total += e.orbit_size;
    rows.push_back(std::move(row));
  }

  switch (a.common.fmt()) {
    case Format::Json: {
      ojson j;
      j["command"] = "orbits";
      j["p"] = a.p;
      j["n"] = a.n;
      j["r"] = a.r;
      j["orbit_count"] = rows.size();
      j["total_subspaces"] = total;
      ojson arr = ojson::array();
      for (const Row& row : rows) {
        ojson e;
        e["rep"] = row.rep_json;
        e["orbit_size"] = row.orbit_size;
        e["stabilizer_q"] = row.stabilizer_q;
        e["partition"] = partition_json(row.partition);
        e["dickson"] = row.dickson;
        arr.push_back(e);
      }
      j["orbits"] = arr;
      emit(a.common, json_text(j));
      break;
    }
    case Format::Csv: {
      std::ostringstream os;
      os << "index,rep,orbit_size,stabilizer_q,partition,dickson\n";
      for (std::size_t i = 0; i < rows.size(); ++i)
        os << i << "," << rows[i].rep << "," << rows[i].orbit_size << ","
           << rows[i].stabilizer_q << "," << join(rows[i].partition, "|") << ","
           << join_str(rows[i].dickson, " ") << "\n";
      emit(a.common, os.str());
      break;
    }
    default: {
      std::ostringstream os;
      os << "rank-" << a.r << " dilation orbits of GF(" << a.p << "," << a.n
         << "): " << rows.size() << " (covering " << total << " subgroups)\n";
      for (std::size_t i = 0; i < rows.size(); ++i)
        os << "  orbit " << i << ": rep [" << rows[i].rep << "] size "
           << rows[i].orbit_size << " stabilizer " << rows[i].stabilizer_q
           << " partition (" << join(rows[i].partition, ",") << ") dickson "
           << join_str(rows[i].dickson, " ") << "\n";
      emit(a.common, os.str());
    }
  }
  return 0;
}

// ------------------------------------------------------------------ classify

struct ClassifyArgs {
  std::int64_t p = 2;
  int n = 1;
  std::string basis;
  CommonOpts common;
};

int run_classify(const ClassifyArgs& a) {
  const FieldPtr F = Field::make(a.p, a.n);
  const Basis gens = parse_basis(*F, a.basis);
  const Subspace V = canonicalize(*F, gens);
  if (V.r == 0) throw std::invalid_argument("the span is trivial");
  const int r = V.r;

  const DicksonVector dv = dickson_eval(basis_of(*F, V));
  std::optional<Partition> theorem;
  switch (r) {
    case 1: theorem = Partition{1}; break;
    case 2: theorem = classify_rank2(dv); break;
    case 3: theorem = classify_rank3(dv); break;
    case 4: theorem = classify_rank4(dv); break;
    case 5: theorem = classify_rank5(dv); break;
    default: break;
  }
  const Partition oracle = partition_of(*F, V);
  const bool agree = !theorem || *theorem == oracle;

  ojson vvals;
  if (r >= 2) {
    vvals["v_1"] = eval_invariant(v_exponents(a.p, r, 1), dv).str();
    for (int jj = 2; jj < r; ++jj)
      vvals["v_1_" + std::to_string(jj)] = v1j_value(dv, jj).str();
  }

  ojson j;
  j["command"] = "classify";
  j["p"] = a.p;
  j["n"] = a.n;
  j["rank"] = r;
  j["rows"] = codes_json(*F, V);
  j["dickson"] = dickson_strings(dv);
  j["v_values"] = vvals;
  if (theorem)
    j["theorem_partition"] = partition_json(*theorem);
  else
    j["theorem_partition"] = "undetermined";
  j["oracle_partition"] = partition_json(oracle);
  j["agree"] = agree;

  switch (a.common.fmt()) {
    case Format::Json:
      emit(a.common, json_text(j));
      break;
    case Format::Csv: {
      std::ostringstream os;
      os << "rank,theorem_partition,oracle_partition,agree\n";
      os << r << "," << (theorem ? join(*theorem, "|") : std::string("undetermined"))
         << "," << join(oracle, "|") << "," << (agree ? "true" : "false") << "\n";
      emit(a.common, os.str());
      break;
    }
    default: {
      std::ostringstream os;
      os << "subgroup [" << codes_str(*F, V) << "] of GF(" << a.p << "," << a.n
         << "), rank " << r << "\n";
      os << "dickson: " << join_str(dickson_strings(dv), " ") << "\n";
      os << "closed-form partition: "
         << (theorem ? "(" + join(*theorem, ",") + ")" : std::string("undetermined"))
         << "\n";
      os << "search partition: (" << join(oracle, ",") << ")\n";
      os << "agree: " << (agree ? "true" : "false") << "\n";
      emit(a.common, os.str());
    }
  }
  return agree ? 0 : 2;
}

// ---------------------------------------------------------------------- eval

struct EvalArgs {
  std::int64_t p = 2;
  int n = 1;
  std::string basis;
  int i = 0;
  int j = 0;
  bool u_kind = false;
  bool whole_set = false;
  CommonOpts common;
};

int run_eval(const EvalArgs& a) {
  const FieldPtr F = Field::make(a.p, a.n);
  const Basis basis = parse_basis(*F, a.basis);
  const int r = static_cast<int>(basis.size());
  const DicksonVector dv = dickson_eval(basis);

  std::vector<InvariantSpec> specs;
  if (a.whole_set) {
    specs = separating_set(a.p, r);
  } else if (a.i > 0 && a.j > 0) {
    specs.push_back(a.u_kind ? uij_exponents(a.p, r, a.i, a.j)
                             : vij_exponents(a.p, r, a.i, a.j));
  } else if (a.i > 0) {
    specs.push_back(v_exponents(a.p, r, a.i));
  } else {
    throw std::invalid_argument("eval: pass --set, or --i (with optional --j/--u)");
  }

  ojson j;
  j["command"] = "eval";
  j["p"] = a.p;
  j["n"] = a.n;
  j["r"] = r;
  ojson basis_json = ojson::array();
  for (const Element& b : basis) basis_json.push_back(b.str());
  j["basis"] = basis_json;
  j["dickson"] = dickson_strings(dv);
  ojson vals = ojson::array();
  for (const InvariantSpec& s : specs) {
    ojson e;
    e["label"] = s.label;
    e["kind"] = kind_name(s.kind);
    e["i"] = s.i;
    e["j"] = s.j;
    e["exponents"] = exponents_json(s.exponents);
    e["value"] = eval_invariant(s, dv).str();
    vals.push_back(e);
  }
  j["values"] = vals;

  switch (a.common.fmt()) {
    case Format::Json:
      emit(a.common, json_text(j));
      break;
    case Format::Csv: {
      std::ostringstream os;
      os << "label,value,exponents\n";
      for (const auto& e : j["values"])
        os << e["label"].get<std::string>() << "," << e["value"].get<std::string>()
           << "," << join(e["exponents"].get<std::vector<std::int64_t>>(), "|")
           << "\n";
      emit(a.common, os.str());
      break;
    }
    default: {
      std::ostringstream os;
      os << "basis rank " << r << ", dickson "
         << join_str(dickson_strings(dv), " ") << "\n";
      for (const auto& e : j["values"])
        os << "  " << e["label"].get<std::string>() << " = "
           << e["value"].get<std::string>() << "\n";
      emit(a.common, os.str());
    }
  }
  return 0;
}

// --------------------------------------------------- primitives and gen-set

struct MonoidArgs {
  std::int64_t p = 2;
  int r = 3;
  std::int64_t cap = 0; // 0: derive from the closed-form family
  bool tilde = false;
  CommonOpts common;
};

std::int64_t default_cap(std::int64_t p, int r) {
  if (r < 3 || r > 5)
    throw std::invalid_argument("no closed-form family for this rank; pass --cap");
  std::int64_t mx = 0;
  for (const FamilyMember& m : generating_family(p, r))
    for (const std::int64_t x : m.v.a) mx = std::max(mx, x);
  return 2 * mx;
}

ojson extra_generator_json(int r) {
  ojson e;
  e["description"] = "d_" + std::to_string(r) + " t";
  e["weight"] = 0;
  return e;
}

ojson tilde_json(const ExponentVec& v) {
  ojson arr = ojson::array();
  for (const std::int64_t x : to_tilde(v).b) arr.push_back(x);
  return arr;
}

void monoid_csv(std::ostringstream& os, int r, bool tilde,
                const std::vector<std::pair<ExponentVec, std::string>>& rows) {
  for (int i = 1; i <= r; ++i) os << "a_" << i << ",";
  if (tilde)
    for (int i = 1; i <= r; ++i) os << "t_" << i << ",";
  os << "height,family_tag\n";
  for (const auto& [v, tag] : rows) {
    for (const std::int64_t x : v.a) os << x << ",";
    if (tilde)
      for (const std::int64_t x : to_tilde(v).b) os << x << ",";
    os << height(v) << "," << tag << "\n";
  }
}

int run_primitives(const MonoidArgs& a) {
  const std::int64_t cap = a.cap > 0 ? a.cap : default_cap(a.p, a.r);
  if (a.tilde && (a.r < 4 || a.r > 5))
    throw std::invalid_argument("tilde coordinates are defined for r in {4,5}");
  const PrimitiveEnumeration en = enumerate_primitive(a.p, a.r, cap);

  std::map<std::vector<std::int64_t>, std::string> tags;
  if (a.r >= 3 && a.r <= 5)
    for (const FamilyMember& m : generating_family(a.p, a.r)) tags[m.v.a] = m.tag;

  std::vector<std::pair<ExponentVec, std::string>> rows;
  for (const ExponentVec& v : en.primitives) {
    const auto it = tags.find(v.a);
    rows.emplace_back(v, it == tags.end() ? "" : it->second);
  }

  switch (a.common.fmt()) {
    case Format::Json: {
      ojson j;
      j["command"] = "primitives";
      j["p"] = a.p;
      j["r"] = a.r;
      j["cap"] = cap;
      j["cap_hit"] = en.touches_cap;
      j["count"] = rows.size();
      j["extra_generator"] = extra_generator_json(a.r);
      ojson arr = ojson::array();
      for (const auto& [v, tag] : rows) {
        ojson e;
        e["a"] = exponents_json(v);
        e["height"] = height(v);
        e["tag"] = tag;
        if (a.tilde) e["tilde"] = tilde_json(v);
        arr.push_back(e);
      }
      j["solutions"] = arr;
      emit(a.common, json_text(j));
      break;
    }
    case Format::Csv: {
      std::ostringstream os;
      monoid_csv(os, a.r, a.tilde, rows);
      emit(a.common, os.str());
      break;
    }
    default: {
      std::ostringstream os;
      os << "primitive solutions for p=" << a.p << ", r=" << a.r
         << ", coordinate cap " << cap << (en.touches_cap ? " (cap hit)" : "")
         << ": " << rows.size() << "\n";
      os << "plus the weight-zero generator d_" << a.r << " t\n";
      for (const auto& [v, tag] : rows) {
        os << "  (" << join(v.a, ",") << ") height " << height(v);
        if (!tag.empty()) os << " [" << tag << "]";
        os << "\n";
      }
      emit(a.common, os.str());
    }
  }
  return 0;
}

int run_gen_set(const MonoidArgs& a) {
  if (a.tilde && (a.r < 4 || a.r > 5))
    throw std::invalid_argument("tilde coordinates are defined for r in {4,5}");
  const std::vector<FamilyMember> fam = generating_family(a.p, a.r);
  std::vector<std::pair<ExponentVec, std::string>> rows;
  for (const FamilyMember& m : fam) rows.emplace_back(m.v, m.tag);

  switch (a.common.fmt()) {
    case Format::Json: {
      ojson j;
      j["command"] = "gen-set";
      j["p"] = a.p;
      j["r"] = a.r;
      j["count"] = rows.size();
      j["extra_generator"] = extra_generator_json(a.r);
      ojson arr = ojson::array();
      for (const auto& [v, tag] : rows) {
        ojson e;
        e["a"] = exponents_json(v);
        e["height"] = height(v);
        e["tag"] = tag;
        if (a.tilde) e["tilde"] = tilde_json(v);
        arr.push_back(e);
      }
      j["family"] = arr;
      emit(a.common, json_text(j));
      break;
    }
    case Format::Csv: {
      std::ostringstream os;
      monoid_csv(os, a.r, a.tilde, rows);
      emit(a.common, os.str());
      break;
    }
    default: {
      std::ostringstream os;
      os << "generating family for p=" << a.p << ", r=" << a.r << ": "
         << rows.size() << " monomials\n";
      os << "plus the weight-zero generator d_" << a.r << " t\n";
      for (const auto& [v, tag] : rows)
        os << "  " << tag << ": (" << join(v.a, ",") << ") height " << height(v)
           << "\n";
      emit(a.common, os.str());
    }
  }
  return 0;
}

// ------------------------------------------------------- sep-set / separate

struct SepSetArgs {
  std::int64_t p = 2;
  int r = 2;
  CommonOpts common;
};

int run_sep_set(const SepSetArgs& a) {
  const std::vector<InvariantSpec> specs = separating_set(a.p, a.r);
  switch (a.common.fmt()) {
    case Format::Json: {
      ojson j;
      j["command"] = "sep-set";
      j["p"] = a.p;
      j["r"] = a.r;
      j["count"] = specs.size();
      ojson arr = ojson::array();
      for (const InvariantSpec& s : specs) {
        ojson e;
        e["label"] = s.label;
        e["kind"] = kind_name(s.kind);
        e["i"] = s.i;
        e["j"] = s.j;
        e["exponents"] = exponents_json(s.exponents);
        arr.push_back(e);
      }
      j["invariants"] = arr;
      emit(a.common, json_text(j));
      break;
    }
    case Format::Csv: {
      std::ostringstream os;
      os << "label,kind,i,j,";
      for (int i = 1; i <= a.r; ++i) os << "a_" << i << (i < a.r ? "," : "\n");
      for (const InvariantSpec& s : specs) {
        os << s.label << "," << kind_name(s.kind) << "," << s.i << "," << s.j << ",";
        for (std::size_t k = 0; k < s.exponents.a.size(); ++k)
          os << s.exponents.a[k] << (k + 1 < s.exponents.a.size() ? "," : "\n");
      }
      emit(a.common, os.str());
      break;
    }
    default: {
      std::ostringstream os;
      os << "separating set for rank " << a.r << " at p=" << a.p << ": "
         << specs.size() << " invariants\n";
      for (const InvariantSpec& s : specs)
        os << "  " << s.label << " exponents (" << join(s.exponents.a, ",") << ")\n";
      emit(a.common, os.str());
    }
  }
  return 0;
}

struct SeparateArgs {
  std::int64_t p = 2;
  int n = 2;
  int r = 2;
  std::uint64_t seed = 20240901;
  CommonOpts common;
};

int run_separate(const SeparateArgs& a) {
  const FieldPtr F = Field::make(a.p, a.n);
  const SeparatingReport rep = separation_check(*F, a.r, a.seed);
  const bool clean = rep.unseparated_pairs.empty() && rep.dilation_invariance_ok;

  switch (a.common.fmt()) {
    case Format::Json: {
      ojson j;
      j["command"] = "separate";
      j["p"] = rep.p;
      j["n"] = rep.n;
      j["r"] = rep.r;
      j["seed"] = rep.seed;
      j["invariants"] = rep.invariant_labels;
      j["orbit_count"] = rep.orbit_count;
      ojson pairs = ojson::array();
      for (const auto& [x, y] : rep.unseparated_pairs)
        pairs.push_back(ojson::array({x, y}));
      j["unseparated_pairs"] = pairs;
      j["dilation_invariance_ok"] = rep.dilation_invariance_ok;
      j["note"] = rep.note;
      ojson fps = ojson::array();
      for (const auto& [codes, values] : rep.fingerprints) {
        ojson e;
        ojson rj = ojson::array();
        for (const std::uint64_t c : codes) rj.push_back(c);
        e["rep"] = rj;
        e["values"] = values;
        fps.push_back(e);
      }
      j["fingerprints"] = fps;
      emit(a.common, json_text(j));
      break;
    }
    case Format::Csv: {
      std::ostringstream os;
      os << "orbit,rep";
      for (const std::string& lab : rep.invariant_labels) os << "," << lab;
      os << "\n";
      for (std::size_t i = 0; i < rep.fingerprints.size(); ++i) {
        os << i << ",";
        const auto& codes = rep.fingerprints[i].first;
        for (std::size_t k = 0; k < codes.size(); ++k)
          os << (k ? " " : "") << codes[k];
        for (const std::string& v : rep.fingerprints[i].second) os << "," << v;
        os << "\n";
      }
      emit(a.common, os.str());
      break;
    }
    default: {
      std::ostringstream os;
      os << "separation check on GF(" << a.p << "," << a.n << "), rank " << a.r
         << ": " << rep.orbit_count << " orbits, "
         << rep.unseparated_pairs.size() << " unseparated pairs, invariance "
         << (rep.dilation_invariance_ok ? "ok" : "BROKEN") << "\n";
      os << "invariants: " << join_str(rep.invariant_labels, " ") << "\n";
      emit(a.common, os.str());
    }
  }
  return clean ? 0 : 2;
}

// -------------------------------------------------------------------- verify

struct VerifyArgs {
  std::string theorem;
  std::string conjecture;
  std::int64_t p = 2;
  int n = 0; // 0: choose the smallest valid n (conjectures only)
  CommonOpts common;
};

ojson run_entry(std::optional<int> s, std::optional<int> r, std::uint64_t checked) {
  ojson e;
  if (s) e["s"] = *s;
  if (r) e["r"] = *r;
  e["checked"] = checked;
  return e;
}

int emit_verify(const VerifyArgs& a, const std::string& mode,
                const std::string& name, ojson body, bool counterexample) {
  body["status"] = counterexample ? "counterexample" : "ok";
  switch (a.common.fmt()) {
    case Format::Json:
      emit(a.common, json_text(body));
      break;
    case Format::Csv: {
      std::ostringstream os;
      os << "mode,name,s,r,checked,status\n";
      if (body.contains("runs")) {
        for (const auto& e : body["runs"])
          os << mode << "," << name << ","
             << (e.contains("s") ? std::to_string(e["s"].get<int>()) : "") << ","
             << (e.contains("r") ? std::to_string(e["r"].get<int>()) : "") << ","
             << e["checked"].get<std::uint64_t>() << ","
             << body["status"].get<std::string>() << "\n";
      } else {
        os << mode << "," << name << ",,5," << body["checked"].get<std::uint64_t>()
           << "," << body["status"].get<std::string>() << "\n";
      }
      emit(a.common, os.str());
      break;
    }
    default: {
      std::ostringstream os;
      os << mode << " " << name << " on GF(" << body["p"].get<std::int64_t>()
         << "," << body["n"].get<int>() << "): "
         << body["status"].get<std::string>() << "\n";
      if (body.contains("runs"))
        for (const auto& e : body["runs"]) {
          os << "  ";
          if (e.contains("s")) os << "s=" << e["s"].get<int>() << " ";
          if (e.contains("r")) os << "r=" << e["r"].get<int>() << " ";
          os << "checked " << e["checked"].get<std::uint64_t>() << "\n";
        }
      else
        os << "  checked " << body["checked"].get<std::uint64_t>() << "\n";
      if (body.contains("counterexamples"))
        os << "  counterexamples: " << body["counterexamples"].size() << "\n";
      emit(a.common, os.str());
    }
  }
  return counterexample ? 2 : 0;
}

int run_verify_theorem(const VerifyArgs& a) {
  if (a.n <= 0)
    throw std::invalid_argument("verify --theorem requires --n");
  const FieldPtr F = Field::make(a.p, a.n);
  ojson body;
  body["command"] = "verify";
  body["mode"] = "theorem";
  body["name"] = a.theorem;
  body["p"] = a.p;
  body["n"] = a.n;
  ojson runs = ojson::array();

  try {
    if (a.theorem == "field") {
      for (int s = 2; s <= a.n; ++s) {
        if (a.n % s != 0) continue;
        for (int r = s; r <= a.n; r += s)
          runs.push_back(run_entry(s, r, verify_fq_space(*F, s, r)));
      }
    } else if (a.theorem == "comp") {
      runs.push_back(run_entry(std::nullopt, std::nullopt, verify_composition(*F)));
    } else if (a.theorem == "codim1") {
      for (int s = 2; s + 1 <= a.n; ++s)
        runs.push_back(run_entry(s, s + 1, verify_codim1(*F, s)));
    } else if (a.theorem == "embedding") {
      for (int r = 2; r <= a.n; ++r) {
        if (a.n % (r + 1) != 0) continue;
        runs.push_back(run_entry(std::nullopt, r, verify_embedding(*F, r)));
      }
      if (runs.empty())
        throw std::invalid_argument("no rank r >= 2 with (r+1) | n at this n");
    } else if (a.theorem == "rk3") {
      runs.push_back(run_entry(std::nullopt, 3, verify_classification(*F, 3)));
    } else if (a.theorem == "rk4") {
      runs.push_back(run_entry(std::nullopt, 4, verify_classification(*F, 4)));
    } else if (a.theorem == "rk4p2") {
      runs.push_back(run_entry(std::nullopt, 4, verify_rank4_fp2(*F)));
    } else if (a.theorem == "rk5") {
      runs.push_back(run_entry(std::nullopt, 5, verify_classification(*F, 5)));
    } else {
      throw std::invalid_argument("unknown theorem: " + a.theorem);
    }
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const std::invalid_argument*>(&e)) throw;
    body["runs"] = runs;
    body["witness"] = e.what();
    return emit_verify(a, "theorem", a.theorem, body, true);
  }
  body["runs"] = runs;
  return emit_verify(a, "theorem", a.theorem, body, false);
}

int run_verify_conjecture(const VerifyArgs& a) {
  const ConjectureId id = conjecture_from_name(a.conjecture);
  int n = a.n;
  if (n <= 0) {
    n = 5;
    const int need = id == ConjectureId::Fp3Module ? 3 : 2;
    while (n % need != 0) ++n;
  }
  const FieldPtr F = Field::make(a.p, n);

  const auto t0 = std::chrono::steady_clock::now();

  // data-parallel evaluation with a deterministic, index-ordered merge
  const std::vector<Subspace> all = enumerate_subspaces(*F, 5);
  struct Cell {
    bool vanish = true;
    bool structure = false;
    std::vector<std::string> values;
  };
  std::vector<Cell> cells(all.size());
  const int jobs =
      std::max(1, std::min<int>(a.common.effective_jobs(),
                                static_cast<int>(std::thread::hardware_concurrency())));
  auto work = [&](std::size_t begin, std::size_t step) {
    for (std::size_t k = begin; k < all.size(); k += step) {
      Cell& c = cells[k];
      const DicksonVector dv = dickson_eval(basis_of(*F, all[k]));
      for (const Element& val : conjecture_values(id, dv)) {
        c.values.push_back(val.str());
        if (!val.is_zero()) c.vanish = false;
      }
      c.structure = conjecture_structure_holds(id, *F, all[k]);
    }
  };
  if (jobs == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t)
      pool.emplace_back(work, static_cast<std::size_t>(t),
                        static_cast<std::size_t>(jobs));
    for (std::thread& t : pool) t.join();
  }

  ojson body;
  body["command"] = "verify";
  body["mode"] = "conjecture";
  body["name"] = a.conjecture;
  body["p"] = a.p;
  body["n"] = n;
  body["note"] =
      "pointwise check on the rank-5 subgroups of this field; agreement is "
      "evidence for the variety-level statement, not a proof of the ideal "
      "identity";
  body["checked"] = all.size();
  ojson cex = ojson::array();
  for (std::size_t k = 0; k < all.size(); ++k) {
    const Cell& c = cells[k];
    if (c.vanish == c.structure) continue;
    ojson e;
    e["direction"] = c.structure ? "forward" : "reverse";
    e["rows"] = codes_json(*F, all[k]);
    e["values"] = c.values;
    e["structure"] = c.structure;
    cex.push_back(e);
  }
  body["counterexamples"] = cex;

  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  std::cerr << "checked " << all.size() << " subgroups in " << ms << " ms\n";
  return emit_verify(a, "conjecture", a.conjecture, body, !cex.empty());
}

int run_verify(const VerifyArgs& a) {
  const bool has_t = !a.theorem.empty();
  const bool has_c = !a.conjecture.empty();
  if (has_t == has_c)
    throw std::invalid_argument("verify: pass exactly one of --theorem, --conjecture");
  return has_t ? run_verify_theorem(a) : run_verify_conjecture(a);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact computations with finite subgroups of GF(p^n): Dickson "
               "invariant evaluation, dilation orbits, partitions, invariant "
               "families and exhaustive theorem checks"};
  app.require_subcommand(1);

  FieldInfoArgs fi;
  auto* c_fi = app.add_subcommand("field-info", "Describe GF(p^n)");
  c_fi->add_option("--p", fi.p, "Characteristic (prime)")->required();
  c_fi->add_option("--n", fi.n, "Extension degree")->required();
  add_common(c_fi, fi.common);

  SubgroupsArgs sg;
  auto* c_sg = app.add_subcommand("subgroups", "List all rank-r subgroups");
  c_sg->add_option("--p", sg.p)->required();
  c_sg->add_option("--n", sg.n)->required();
  c_sg->add_option("--r", sg.r)->required();
  add_common(c_sg, sg.common);

  OrbitsArgs ob;
  auto* c_ob = app.add_subcommand("orbits", "Dilation orbits with invariants");
  c_ob->add_option("--p", ob.p)->required();
  c_ob->add_option("--n", ob.n)->required();
  c_ob->add_option("--r", ob.r)->required();
  add_common(c_ob, ob.common);

  ClassifyArgs cl;
  auto* c_cl = app.add_subcommand("classify", "Partition of the span of a basis");
  c_cl->add_option("--p", cl.p)->required();
  c_cl->add_option("--n", cl.n)->required();
  c_cl->add_option("--basis", cl.basis,
                   "Comma-separated elements as base-p digit strings "
                   "(degree-0 digit first)")
      ->required();
  add_common(c_cl, cl.common);

  EvalArgs ev;
  auto* c_ev = app.add_subcommand("eval", "Evaluate separating invariants on a basis");
  c_ev->add_option("--p", ev.p)->required();
  c_ev->add_option("--n", ev.n)->required();
  c_ev->add_option("--basis", ev.basis, "Comma-separated elements")->required();
  c_ev->add_option("--i", ev.i, "First index");
  c_ev->add_option("--j", ev.j, "Second index (selects v_ij)");
  c_ev->add_flag("--u", ev.u_kind, "Use the u_ij form instead of v_ij");
  c_ev->add_flag("--set", ev.whole_set, "Evaluate the whole separating set");
  add_common(c_ev, ev.common);

  MonoidArgs pr;
  auto* c_pr = app.add_subcommand(
      "primitives", "Enumerate primitive weight-equation solutions up to a cap");
  c_pr->add_option("--p", pr.p)->required();
  c_pr->add_option("--r", pr.r)->required();
  c_pr->add_option("--cap", pr.cap, "Coordinate cap (default: 2x family maximum)");
  c_pr->add_flag("--tilde", pr.tilde, "Also print tilde coordinates (r in {4,5})");
  add_common(c_pr, pr.common);

  MonoidArgs gs;
  auto* c_gs = app.add_subcommand("gen-set", "Closed-form generating family");
  c_gs->add_option("--p", gs.p)->required();
  c_gs->add_option("--r", gs.r)->required();
  c_gs->add_flag("--tilde", gs.tilde, "Also print tilde coordinates (r in {4,5})");
  add_common(c_gs, gs.common);

  SepSetArgs ss;
  auto* c_ss = app.add_subcommand("sep-set", "Separating invariant set");
  c_ss->add_option("--p", ss.p)->required();
  c_ss->add_option("--r", ss.r)->required();
  add_common(c_ss, ss.common);

  SeparateArgs se;
  auto* c_se = app.add_subcommand("separate", "Check orbit separation on GF(p^n)");
  c_se->add_option("--p", se.p)->required();
  c_se->add_option("--n", se.n)->required();
  c_se->add_option("--r", se.r)->required();
  c_se->add_option("--seed", se.seed, "Seed for the invariance spot check")
      ->capture_default_str();
  add_common(c_se, se.common);

  VerifyArgs vf;
  auto* c_vf = app.add_subcommand("verify", "Exhaustive theorem/conjecture checks");
  c_vf->add_option("--theorem", vf.theorem,
                   "One of field, comp, codim1, embedding, rk3, rk4, rk4p2, rk5");
  c_vf->add_option("--conjecture", vf.conjecture, "One of fp3, subspace, fp2");
  c_vf->add_option("--p", vf.p)->required();
  c_vf->add_option("--n", vf.n, "Ambient degree (conjectures: smallest valid default)");
  add_common(c_vf, vf.common);

  int rc = 0;
  c_fi->callback([&] { rc = run_field_info(fi); });
  c_sg->callback([&] { rc = run_subgroups(sg); });
  c_ob->callback([&] { rc = run_orbits(ob); });
  c_cl->callback([&] { rc = run_classify(cl); });
  c_ev->callback([&] { rc = run_eval(ev); });
  c_pr->callback([&] { rc = run_primitives(pr); });
  c_gs->callback([&] { rc = run_gen_set(gs); });
  c_ss->callback([&] { rc = run_sep_set(ss); });
  c_se->callback([&] { rc = run_separate(se); });
  c_vf->callback([&] { rc = run_verify(vf); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::logic_error& e) {
    ojson j;
    j["status"] = "counterexample";
    j["witness"] = e.what();
    std::cout << j.dump(2) << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
