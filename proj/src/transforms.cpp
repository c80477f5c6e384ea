#include "transforms.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

namespace ctmhd {

const char* transform_kind_name(TransformKind kind) {
  switch (kind) {
    case TransformKind::kAreaToPoint: return "area_to_point";
    case TransformKind::kPointToArea: return "point_to_area";
    case TransformKind::kVolumeToPoint: return "volume_to_point";
    case TransformKind::kPointToVolume: return "point_to_volume";
    case TransformKind::kLineToPoint: return "line_to_point";
    case TransformKind::kPointToLine: return "point_to_line";
    case TransformKind::kStaggeredBToVolume: return "staggered_b_to_volume";
  }
  return "?";
}

int TransformTable::stencil_radius() const {
  int r = 0;
  for (const auto& term : terms) {
    if (kind == TransformKind::kStaggeredBToVolume)
      r = std::max(r, term.cls[0]);  // slots i+r and i+1-r
    else
      r = std::max(r, term.cls[0]);
  }
  return r;
}

std::string TransformTable::dump_fractions() const {
  std::ostringstream os;
  os << transform_kind_name(kind) << " order " << order << ":";
  for (const auto& term : terms) {
    os << "  ";
    if (kind == TransformKind::kStaggeredBToVolume) {
      os << "pair(" << (2 * term.cls[0] - 1) << "/2)";
    } else {
      os << "S";
      for (int d = 0; d < dims; ++d) os << term.cls[d];
    }
    os << ": " << term.coeff.str();
  }
  return os.str();
}

std::vector<std::array<int, 3>> offset_class_members(const std::array<int, 3>& cls, int dims) {
  std::array<int, 3> sorted = cls;
  std::sort(sorted.begin(), sorted.begin() + dims, std::greater<int>());
  std::set<std::array<int, 3>> perms;
  std::array<int, 3> p = sorted;
  std::sort(p.begin(), p.begin() + dims);
  do {
    std::array<int, 3> q{0, 0, 0};
    for (int d = 0; d < dims; ++d) q[d] = p[d];
    perms.insert(q);
  } while (std::next_permutation(p.begin(), p.begin() + dims));
  std::vector<std::array<int, 3>> members;
  for (const auto& base : perms) {
    int nz = 0;
    for (int d = 0; d < dims; ++d) nz += base[d] != 0;
    for (int mask = 0; mask < (1 << nz); ++mask) {
      std::array<int, 3> m = base;
      int bit = 0;
      for (int d = 0; d < dims; ++d) {
        if (m[d] == 0) continue;
        if (mask & (1 << bit)) m[d] = -m[d];
        ++bit;
      }
      members.push_back(m);
    }
  }
  return members;
}

double sigma_offset_sum(const Field3& f, int i, int j, int k, const std::array<int, 3>& cls,
                        int dims, int ax0, int ax1) {
  int radius = std::max({cls[0], cls[1], cls[2]});
  if (radius > f.ng) throw NumericError("sigma_offset_sum: stencil exceeds ghost width");
  double s = 0.0;
  for (const auto& m : offset_class_members(cls, dims)) {
    int d[3] = {0, 0, 0};
    if (dims == 3) {
      d[0] = m[0];
      d[1] = m[1];
      d[2] = m[2];
    } else if (dims == 2) {
      d[ax0] = m[0];
      d[ax1] = m[1];
    } else {
      d[ax0] = m[0];
    }
    s += f(i + d[0], j + d[1], k + d[2]);
  }
  return s;
}

namespace {

// avg of x^{2m} over unit cell at integer or half-integer offset a:
// ((a+1/2)^{2m+1} - (a-1/2)^{2m+1}) / (2m+1), with a = a_num/2.
Rat cell_moment(const Rat& a, int m) {
  Rat hi = a + Rat(1, 2);
  Rat lo = a - Rat(1, 2);
  return (Rat::pow(hi, 2 * m + 1) - Rat::pow(lo, 2 * m + 1)) / Rat(2 * m + 1);
}

std::vector<std::array<int, 3>> sorted_classes(int half_order, int dims) {
  // all a >= b >= c >= 0 with a+b+c <= half_order-1
  std::vector<std::array<int, 3>> out;
  int cap = half_order - 1;
  for (int a = 0; a <= cap; ++a)
    for (int b = 0; b <= (dims >= 2 ? a : 0); ++b)
      for (int c = 0; c <= (dims >= 3 ? b : 0); ++c)
        if (a + b + c <= cap) out.push_back({a, b, c});
  return out;
}

TransformTable derive_avg_point(int order, TransformKind kind, int dims, bool avg_to_point) {
  const int p = order / 2;
  auto classes = sorted_classes(p, dims);
  const size_t n = classes.size();
  std::vector<std::vector<Rat>> A(n, std::vector<Rat>(n, Rat(0)));
  std::vector<Rat> rhs(n, Rat(0));
  for (size_t row = 0; row < n; ++row) {
    const auto& m = classes[row];  // moment exponents (2m[0], 2m[1], 2m[2])
    for (size_t col = 0; col < n; ++col) {
      Rat entry(0);
      for (const auto& o : offset_class_members(classes[col], dims)) {
        Rat prod(1);
        for (int d = 0; d < dims; ++d) {
          Rat od(o[d]);
          prod = prod * (avg_to_point ? cell_moment(od, m[d]) : Rat::pow(od, 2 * m[d]));
        }
        entry = entry + prod;
      }
      A[row][col] = entry;
    }
    if (avg_to_point) {
      rhs[row] = (row == 0) ? Rat(1) : Rat(0);  // point value of monomial at center
    } else {
      Rat target(1);
      for (int d = 0; d < dims; ++d) target = target * cell_moment(Rat(0), m[d]);
      rhs[row] = target;
    }
  }
  auto x = rat_solve(A, rhs);
  TransformTable t;
  t.order = order;
  t.kind = kind;
  t.dims = dims;
  for (size_t c = 0; c < n; ++c) {
    TransformTerm term;
    term.cls = classes[c];
    term.coeff = x[c];
    term.weight = x[c].to_double();
    t.terms.push_back(term);
  }
  return t;
}

TransformTable derive_binterp(int order) {
  const int p = order / 2;
  std::vector<std::vector<Rat>> A(p, std::vector<Rat>(p, Rat(0)));
  std::vector<Rat> rhs(p, Rat(0));
  for (int m = 0; m < p; ++m) {
    for (int r = 1; r <= p; ++r) {
      Rat o(2 * r - 1, 2);
      A[m][r - 1] = Rat(2) * Rat::pow(o, 2 * m);
    }
    rhs[m] = cell_moment(Rat(0), m);
  }
  auto x = rat_solve(A, rhs);
  TransformTable t;
  t.order = order;
  t.kind = TransformKind::kStaggeredBToVolume;
  t.dims = 1;
  for (int r = 1; r <= p; ++r) {
    TransformTerm term;
    term.cls = {r, 0, 0};
    term.coeff = x[r - 1];
    term.weight = x[r - 1].to_double();
    t.terms.push_back(term);
  }
  return t;
}

struct PrintedTerm {
  std::array<int, 3> cls;
  long long num, den;
};

// Every fraction printed in the paper's transformation tables, used as an
// exact cross-check of the derived coefficients.
const std::map<std::pair<TransformKind, int>, std::vector<PrintedTerm>>& printed_tables() {
  static const std::map<std::pair<TransformKind, int>, std::vector<PrintedTerm>> tables = {
      // area-average -> point value
      {{TransformKind::kAreaToPoint, 2}, {{{0, 0, 0}, 1, 1}}},
      {{TransformKind::kAreaToPoint, 4}, {{{0, 0, 0}, 7, 6}, {{1, 0, 0}, -1, 24}}},
      {{TransformKind::kAreaToPoint, 6},
       {{{0, 0, 0}, 1771, 1440},
        {{1, 0, 0}, -23, 360},
        {{2, 0, 0}, 3, 640},
        {{1, 1, 0}, 1, 576}}},
      {{TransformKind::kAreaToPoint, 8},
       {{{0, 0, 0}, 25451, 20160},
        {{1, 0, 0}, -4973, 64512},
        {{2, 0, 0}, 83, 8960},
        {{3, 0, 0}, -5, 7168},
        {{1, 1, 0}, 19, 5760},
        {{2, 1, 0}, -1, 5120}}},
      {{TransformKind::kAreaToPoint, 10},
       {{{0, 0, 0}, 5514407, 4300800},
        {{1, 0, 0}, -69119, 806400},
        {{2, 0, 0}, 42149, 3225600},
        {{3, 0, 0}, -55, 32256},
        {{4, 0, 0}, 35, 294912},
        {{1, 1, 0}, 29173, 6451200},
        {{2, 1, 0}, -41, 89600},
        {{3, 1, 0}, 5, 172032},
        {{2, 2, 0}, 9, 409600}}},
      // point value -> area-average
      {{TransformKind::kPointToArea, 2}, {{{0, 0, 0}, 1, 1}}},
      {{TransformKind::kPointToArea, 4}, {{{0, 0, 0}, 5, 6}, {{1, 0, 0}, 1, 24}}},
      {{TransformKind::kPointToArea, 6},
       {{{0, 0, 0}, 1159, 1440},
        {{1, 0, 0}, 1, 20},
        {{2, 0, 0}, -17, 5760},
        {{1, 1, 0}, 1, 576}}},
      {{TransformKind::kPointToArea, 8},
       {{{0, 0, 0}, 47939, 60480},
        {{1, 0, 0}, 52223, 967680},
        {{2, 0, 0}, -241, 48384},
        {{3, 0, 0}, 367, 967680},
        {{1, 1, 0}, 47, 17280},
        {{2, 1, 0}, -17, 138240}}},
      {{TransformKind::kPointToArea, 10},
       {{{0, 0, 0}, 91251029, 116121600},
        {{1, 0, 0}, 163519, 2903040},
        {{2, 0, 0}, -186331, 29030400},
        {{3, 0, 0}, 12011, 14515200},
        {{4, 0, 0}, -27859, 464486400},
        {{1, 1, 0}, 193537, 58060800},
        {{2, 1, 0}, -3667, 14515200},
        {{3, 1, 0}, 367, 23224320},
        {{2, 2, 0}, 289, 33177600}}},
      // volume-average -> point value
      {{TransformKind::kVolumeToPoint, 2}, {{{0, 0, 0}, 1, 1}}},
      {{TransformKind::kVolumeToPoint, 4}, {{{0, 0, 0}, 5, 4}, {{1, 0, 0}, -1, 24}}},
      {{TransformKind::kVolumeToPoint, 6},
       {{{0, 0, 0}, 1301, 960},
        {{1, 0, 0}, -97, 1440},
        {{2, 0, 0}, 3, 640},
        {{1, 1, 0}, 1, 576}}},
      {{TransformKind::kVolumeToPoint, 8},
       {{{0, 0, 0}, 341519, 241920},
        {{1, 0, 0}, -80881, 967680},
        {{2, 0, 0}, 173, 17920},
        {{3, 0, 0}, -5, 7168},
        {{1, 1, 0}, 119, 34560},
        {{2, 1, 0}, -1, 5120},
        {{1, 1, 1}, -1, 13824}}},
      {{TransformKind::kVolumeToPoint, 10},
       {{{0, 0, 0}, 15997789, 11059200},
        {{1, 0, 0}, -1829207, 19353600},
        {{2, 0, 0}, 25751, 1843200},
        {{3, 0, 0}, -65, 36864},
        {{4, 0, 0}, 35, 294912},
        {{1, 1, 0}, 11723, 2419200},
        {{2, 1, 0}, -1019, 2150400},
        {{3, 1, 0}, 5, 172032},
        {{2, 2, 0}, 9, 409600},
        {{1, 1, 1}, -47, 276480},
        {{2, 1, 1}, 1, 122880}}},
      // point value -> volume-average
      {{TransformKind::kPointToVolume, 2}, {{{0, 0, 0}, 1, 1}}},
      {{TransformKind::kPointToVolume, 4}, {{{0, 0, 0}, 3, 4}, {{1, 0, 0}, 1, 24}}},
      {{TransformKind::kPointToVolume, 6},
       {{{0, 0, 0}, 689, 960},
        {{1, 0, 0}, 67, 1440},
        {{2, 0, 0}, -17, 5760},
        {{1, 1, 0}, 1, 576}}},
      {{TransformKind::kPointToVolume, 8},
       {{{0, 0, 0}, 34025, 48384},
        {{1, 0, 0}, 47477, 967680},
        {{2, 0, 0}, -2291, 483840},
        {{3, 0, 0}, 367, 967680},
        {{1, 1, 0}, 89, 34560},
        {{2, 1, 0}, -17, 138240},
        {{1, 1, 1}, 1, 13824}}},
      {{TransformKind::kPointToVolume, 10},
       {{{0, 0, 0}, 53802803, 77414400},
        {{1, 0, 0}, 2939507, 58060800},
        {{2, 0, 0}, -138211, 23224320},
        {{3, 0, 0}, 15403, 19353600},
        {{4, 0, 0}, -27859, 464486400},
        {{1, 1, 0}, 5581, 1814400},
        {{2, 1, 0}, -4691, 19353600},
        {{3, 1, 0}, 367, 23224320},
        {{2, 2, 0}, 289, 33177600},
        {{1, 1, 1}, 37, 276480},
        {{2, 1, 1}, -17, 3317760}}},
      // line-average -> point value
      {{TransformKind::kLineToPoint, 2}, {{{0, 0, 0}, 1, 1}}},
      {{TransformKind::kLineToPoint, 4}, {{{0, 0, 0}, 13, 12}, {{1, 0, 0}, -1, 24}}},
      {{TransformKind::kLineToPoint, 6},
       {{{0, 0, 0}, 1067, 960}, {{1, 0, 0}, -29, 480}, {{2, 0, 0}, 3, 640}}},
      {{TransformKind::kLineToPoint, 8},
       {{{0, 0, 0}, 30251, 26880},
        {{1, 0, 0}, -7621, 107520},
        {{2, 0, 0}, 159, 17920},
        {{3, 0, 0}, -5, 7168}}},
      {{TransformKind::kLineToPoint, 10},
       {{{0, 0, 0}, 5851067, 5160960},
        {{1, 0, 0}, -100027, 1290240},
        {{2, 0, 0}, 31471, 2580480},
        {{3, 0, 0}, -425, 258048},
        {{4, 0, 0}, 35, 294912}}},
      // point value -> line-average
      {{TransformKind::kPointToLine, 2}, {{{0, 0, 0}, 1, 1}}},
      {{TransformKind::kPointToLine, 4}, {{{0, 0, 0}, 11, 12}, {{1, 0, 0}, 1, 24}}},
      {{TransformKind::kPointToLine, 6},
       {{{0, 0, 0}, 863, 960}, {{1, 0, 0}, 77, 1440}, {{2, 0, 0}, -17, 5760}}},
      {{TransformKind::kPointToLine, 8},
       {{{0, 0, 0}, 215641, 241920},
        {{1, 0, 0}, 6361, 107520},
        {{2, 0, 0}, -281, 53760},
        {{3, 0, 0}, 367, 967680}}},
      {{TransformKind::kPointToLine, 10},
       {{{0, 0, 0}, 41208059, 46448640},
        {{1, 0, 0}, 3629953, 58060800},
        {{2, 0, 0}, -801973, 116121600},
        {{3, 0, 0}, 49879, 58060800},
        {{4, 0, 0}, -27859, 464486400}}},
      // staggered b -> volume average, pair r <-> faces at +-(2r-1)/2
      {{TransformKind::kStaggeredBToVolume, 2}, {{{1, 0, 0}, 1, 2}}},
      {{TransformKind::kStaggeredBToVolume, 4}, {{{1, 0, 0}, 13, 24}, {{2, 0, 0}, -1, 24}}},
      {{TransformKind::kStaggeredBToVolume, 6},
       {{{1, 0, 0}, 802, 1440}, {{2, 0, 0}, -93, 1440}, {{3, 0, 0}, 11, 1440}}},
      {{TransformKind::kStaggeredBToVolume, 8},
       {{{1, 0, 0}, 68323, 120960},
        {{2, 0, 0}, -9531, 120960},
        {{3, 0, 0}, 1879, 120960},
        {{4, 0, 0}, -191, 120960}}},
      {{TransformKind::kStaggeredBToVolume, 10},
       {{{1, 0, 0}, 4134338, 7257600},
        {{2, 0, 0}, -641776, 7257600},
        {{3, 0, 0}, 162680, 7257600},
        {{4, 0, 0}, -28939, 7257600},
        {{5, 0, 0}, 2497, 7257600}}},
  };
  return tables;
}

void check_against_printed(const TransformTable& t) {
  auto it = printed_tables().find({t.kind, t.order});
  if (it == printed_tables().end()) return;
  const auto& printed = it->second;
  if (printed.size() != t.terms.size())
    throw NumericError(std::string("transform table term count differs from printed: ") +
                       transform_kind_name(t.kind));
  for (const auto& pt : printed) {
    bool found = false;
    for (const auto& term : t.terms) {
      if (term.cls == pt.cls) {
        if (term.coeff != Rat(pt.num, pt.den))
          throw NumericError(std::string("derived coefficient differs from printed table: ") +
                             transform_kind_name(t.kind) + " order " + std::to_string(t.order));
        found = true;
        break;
      }
    }
    if (!found)
      throw NumericError(std::string("printed offset class missing in derived table: ") +
                         transform_kind_name(t.kind));
  }
}

}  // namespace

TransformTable derive_transform_table(int order, TransformKind kind) {
  if (order < 2 || order > 10 || order % 2 != 0)
    throw ConfigError("transform tables exist for even orders 2..10");
  TransformTable t;
  switch (kind) {
    case TransformKind::kVolumeToPoint: t = derive_avg_point(order, kind, 3, true); break;
    case TransformKind::kPointToVolume: t = derive_avg_point(order, kind, 3, false); break;
    case TransformKind::kAreaToPoint: t = derive_avg_point(order, kind, 2, true); break;
    case TransformKind::kPointToArea: t = derive_avg_point(order, kind, 2, false); break;
    case TransformKind::kLineToPoint: t = derive_avg_point(order, kind, 1, true); break;
    case TransformKind::kPointToLine: t = derive_avg_point(order, kind, 1, false); break;
    case TransformKind::kStaggeredBToVolume: t = derive_binterp(order); break;
  }
  check_against_printed(t);
  return t;
}

const TransformTable& transform_table(int order, TransformKind kind) {
  static std::map<std::pair<int, TransformKind>, TransformTable> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto key = std::make_pair(order, kind);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, derive_transform_table(order, kind)).first;
  return it->second;
}

namespace {

struct Tap {
  int di, dj, dk;
  double w;
};

std::vector<Tap> build_taps(const TransformTable& t, int ax0, int ax1) {
  std::vector<Tap> taps;
  for (const auto& term : t.terms) {
    for (const auto& m : offset_class_members(term.cls, t.dims)) {
      Tap tap{0, 0, 0, term.weight};
      int d[3] = {0, 0, 0};
      if (t.dims == 3) {
        d[0] = m[0];
        d[1] = m[1];
        d[2] = m[2];
      } else if (t.dims == 2) {
        d[ax0] = m[0];
        d[ax1] = m[1];
      } else {
        d[ax0] = m[0];
      }
      tap.di = d[0];
      tap.dj = d[1];
      tap.dk = d[2];
      taps.push_back(tap);
    }
  }
  return taps;
}

void apply_taps(const Field3& in, Field3& out, const std::vector<Tap>& taps) {
  if (out.nx != in.nx || out.ny != in.ny || out.nz != in.nz) out.resize(in.nx, in.ny, in.nz, in.ng);
  std::vector<long> shift(taps.size());
  for (size_t t = 0; t < taps.size(); ++t)
    shift[t] = in.index(taps[t].di, taps[t].dj, taps[t].dk) - in.index(0, 0, 0);
  parallel_for(0, in.nz, [&](long k) {
    for (int j = 0; j < in.ny; ++j) {
      long base = in.index(0, j, static_cast<int>(k));
      for (int i = 0; i < in.nx; ++i) {
        double acc = 0.0;
        for (size_t t = 0; t < taps.size(); ++t) acc += taps[t].w * in.data[base + i + shift[t]];
        out.data[base + i] = acc;
      }
    }
  });
}

}  // namespace

void apply_cell_transform(const Field3& in, Field3& out, const TransformTable& t) {
  if (t.dims != 3) throw NumericError("apply_cell_transform: table is not 3D");
  if (t.stencil_radius() > in.ng) throw NumericError("apply_cell_transform: ghost width too small");
  apply_taps(in, out, build_taps(t, 0, 1));
}

void apply_face_transform(const Field3& in, Field3& out, const TransformTable& t, int normal) {
  if (t.dims != 2) throw NumericError("apply_face_transform: table is not 2D");
  if (t.stencil_radius() > in.ng) throw NumericError("apply_face_transform: ghost width too small");
  int ax0 = (normal + 1) % 3;
  int ax1 = (normal + 2) % 3;
  apply_taps(in, out, build_taps(t, ax0, ax1));
}

void apply_line_transform(const Field3& in, Field3& out, const TransformTable& t, int dir) {
  if (t.dims != 1) throw NumericError("apply_line_transform: table is not 1D");
  if (t.stencil_radius() > in.ng) throw NumericError("apply_line_transform: ghost width too small");
  apply_taps(in, out, build_taps(t, dir, (dir + 1) % 3));
}

void staggered_b_to_volume(const StaggeredField& b, const Grid& g, int order,
                           std::array<Field3, 3>& out) {
  const TransformTable& t = transform_table(order, TransformKind::kStaggeredBToVolume);
  const int p = order / 2;
  if (p > g.ghost) throw NumericError("staggered_b_to_volume: ghost width too small");
  for (int n = 0; n < 3; ++n) {
    const Field3& in = b[n];
    Field3& o = out[n];
    if (o.nx != in.nx || o.ny != in.ny || o.nz != in.nz) o.resize(in.nx, in.ny, in.nz, in.ng);
    // face pair r sits in slots i+r and i+1-r along direction n
    std::vector<long> sp(p), sm(p);
    std::vector<double> w(p);
    for (const auto& term : t.terms) {
      int r = term.cls[0];
      int d[3] = {0, 0, 0};
      d[n] = r;
      long plus = in.index(d[0], d[1], d[2]) - in.index(0, 0, 0);
      d[n] = 1 - r;
      long minus = in.index(d[0], d[1], d[2]) - in.index(0, 0, 0);
      sp[r - 1] = plus;
      sm[r - 1] = minus;
      w[r - 1] = term.weight;
    }
    parallel_for(0, in.nz, [&](long k) {
      for (int j = 0; j < in.ny; ++j) {
        long base = in.index(0, j, static_cast<int>(k));
        for (int i = 0; i < in.nx; ++i) {
          double acc = 0.0;
          for (int r = 0; r < p; ++r)
            acc += w[r] * (in.data[base + i + sp[r]] + in.data[base + i + sm[r]]);
          o.data[base + i] = acc;
        }
      }
    });
  }
}

}  // namespace ctmhd
