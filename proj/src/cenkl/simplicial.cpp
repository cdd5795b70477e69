#include <algorithm>
#include <numeric>

#include "tame/cenkl.hpp"

namespace tame::cenkl {

namespace {

std::vector<int> identity(int n) {
  std::vector<int> id(n + 1);
  std::iota(id.begin(), id.end(), 0);
  return id;
}

}  // namespace

void SimplicialSetFin::add(const std::string& name, int n, const std::vector<FaceSpec>& faces) {
  if (name.empty()) fail(ErrorCode::InvalidArgument, "simplex names must be nonempty");
  if (index_.count(name)) fail(ErrorCode::InvalidArgument, "duplicate simplex name '" + name + "'");
  if (n < 0 || n > dim() + 1) fail(ErrorCode::InvalidArgument, "simplices must be added by increasing dimension");
  if (n > 30) fail(ErrorCode::InvalidArgument, "simplex dimension too large");
  if (static_cast<int>(faces.size()) != (n == 0 ? 0 : n + 1))
    fail(ErrorCode::InvalidArgument, "simplex '" + name + "' needs " + std::to_string(n == 0 ? 0 : n + 1) + " faces");
  std::vector<Simplex> resolved;
  for (const auto& f : faces) {
    auto t = find(f.target);
    if (!t) fail(ErrorCode::InvalidArgument, "face of '" + name + "' refers to unknown simplex '" + f.target + "'");
    if (t->first + static_cast<int>(f.word.size()) != n - 1)
      fail(ErrorCode::InvalidArgument, "face of '" + name + "' has the wrong dimension");
    resolved.push_back(from_word(t->first, t->second, f.word));
  }
  if (n > dim()) {
    names_.emplace_back();
    faces_.emplace_back();
  }
  index_.emplace(name, std::make_pair(n, static_cast<std::uint32_t>(names_[n].size())));
  names_[n].push_back(name);
  faces_[n].push_back(std::move(resolved));
}

std::optional<std::pair<int, std::uint32_t>> SimplicialSetFin::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Simplex SimplicialSetFin::simplex(int n, std::uint32_t i) const {
  if (i >= count(n)) fail(ErrorCode::InvalidArgument, "simplex index out of range");
  return Simplex{n, i, identity(n)};
}

Simplex SimplicialSetFin::degeneracy(const Simplex& s, int j) {
  if (j < 0 || j > s.dim()) fail(ErrorCode::InvalidArgument, "degeneracy index out of range");
  Simplex out{s.base_dim, s.base, {}};
  for (int a = 0; a <= s.dim() + 1; ++a) out.theta.push_back(s.theta[a <= j ? a : a - 1]);
  return out;
}

Simplex SimplicialSetFin::from_word(int n, std::uint32_t base, const std::vector<int>& word) const {
  Simplex s = simplex(n, base);
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    if (*it < 0 || *it > s.dim()) fail(ErrorCode::InvalidArgument, "degeneracy word out of range");
    s = degeneracy(s, *it);
  }
  return s;
}

Simplex SimplicialSetFin::face(const Simplex& s, int i) const {
  const int m = s.dim();
  if (m < 1 || i < 0 || i > m) fail(ErrorCode::InvalidArgument, "face index out of range");
  const int j = s.theta[i];
  bool repeated = (i > 0 && s.theta[i - 1] == j) || (i < m && s.theta[i + 1] == j);
  std::vector<int> rest(s.theta);
  rest.erase(rest.begin() + i);
  if (repeated) return Simplex{s.base_dim, s.base, std::move(rest)};
  for (int& v : rest)
    if (v > j) --v;
  const Simplex& g = faces_[s.base_dim][s.base][j];
  Simplex out{g.base_dim, g.base, {}};
  for (int v : rest) out.theta.push_back(g.theta[v]);
  return out;
}

Simplex SimplicialSetFin::sub_face(const Simplex& s, const std::vector<int>& vertices) const {
  Simplex out = s;
  for (int v = s.dim(); v >= 0; --v)
    if (!std::binary_search(vertices.begin(), vertices.end(), v)) out = face(out, v);
  return out;
}

std::string SimplicialSetFin::describe(const Simplex& s) const {
  std::string prefix;
  std::vector<int> theta = s.theta;
  for (std::size_t a = 0; a + 1 < theta.size();) {
    if (theta[a] == theta[a + 1]) {
      prefix += "s" + std::to_string(a) + " ";
      theta.erase(theta.begin() + static_cast<long>(a) + 1);
      a = 0;
    } else {
      ++a;
    }
  }
  return prefix + name(s.base_dim, s.base);
}

void SimplicialSetFin::validate() const {
  for (int n = 2; n <= dim(); ++n)
    for (std::uint32_t k = 0; k < count(n); ++k) {
      Simplex x = simplex(n, k);
      for (int j = 1; j <= n; ++j)
        for (int i = 0; i < j; ++i)
          if (face(face(x, j), i) != face(face(x, i), j - 1))
            fail(ErrorCode::SimplicialIdentityViolation, "d" + std::to_string(i) + " d" + std::to_string(j) +
                                                 " fails on '" + name(n, k) + "'");
    }
}

SimplicialSetFin standard_simplex(int n) {
  if (n < 0 || n > 9) fail(ErrorCode::InvalidArgument, "standard simplex dimension must be in 0..9");
  SimplicialSetFin x;
  auto label = [](const std::vector<int>& s) {
    std::string out;
    for (int v : s) out += std::to_string(v);
    return out;
  };
  for (int k = 0; k <= n; ++k)
    for (const auto& s : subsets(n, k + 1)) {
      std::vector<FaceSpec> faces;
      if (k > 0)
        for (int i = 0; i <= k; ++i) {
          auto f = s;
          f.erase(f.begin() + i);
          faces.push_back({label(f), {}});
        }
      x.add(label(s), k, faces);
    }
  return x;
}

SimplicialSetFin bar_construction(unsigned l, int max_dim) {
  if (!coeff::is_prime(l)) fail(ErrorCode::InvalidArgument, "bar construction needs a prime l");
  if (max_dim < 0 || max_dim > 8) fail(ErrorCode::InvalidArgument, "bar construction dimension must be in 0..8");
  SimplicialSetFin x;
  auto label = [](const std::vector<unsigned>& g) {
    if (g.empty()) return std::string("*");
    std::string s = "[";
    for (std::size_t i = 0; i < g.size(); ++i) s += (i ? "|" : "") + std::to_string(g[i]);
    return s + "]";
  };
  x.add("*", 0);
  for (int n = 1; n <= max_dim; ++n) {
    std::vector<unsigned> g(n, 1);
    while (true) {
      std::vector<FaceSpec> faces;
      for (int i = 0; i <= n; ++i) {
        if (i == 0 || i == n) {
          std::vector<unsigned> h(g.begin() + (i == 0 ? 1 : 0), g.end() - (i == n ? 1 : 0));
          faces.push_back({label(h), {}});
          continue;
        }
        unsigned merged = (g[i - 1] + g[i]) % l;
        std::vector<unsigned> h(g.begin(), g.begin() + i - 1);
        if (merged == 0) {
          h.insert(h.end(), g.begin() + i + 1, g.end());
          faces.push_back({label(h), {i - 1}});
        } else {
          h.push_back(merged);
          h.insert(h.end(), g.begin() + i + 1, g.end());
          faces.push_back({label(h), {}});
        }
      }
      x.add(label(g), n, faces);
      int k = n - 1;
      while (k >= 0 && g[k] == l - 1) g[k--] = 1;
      if (k < 0) break;
      ++g[k];
    }
  }
  return x;
}

SimplicialSetFin builtin_space(const std::string& name) {
  SimplicialSetFin x;
  if (name == "point") {
    x.add("*", 0);
  } else if (name == "interval") {
    return standard_simplex(1);
  } else if (name == "circle") {
    x.add("v", 0);
    x.add("e", 1, {{"v", {}}, {"v", {}}});
  } else if (name == "boundary-2") {
    for (const char* v : {"0", "1", "2"}) x.add(v, 0);
    x.add("01", 1, {{"1", {}}, {"0", {}}});
    x.add("02", 1, {{"2", {}}, {"0", {}}});
    x.add("12", 1, {{"2", {}}, {"1", {}}});
  } else if (name == "torus") {
    x.add("v", 0);
    for (const char* e : {"a", "b", "c"}) x.add(e, 1, {{"v", {}}, {"v", {}}});
    x.add("U", 2, {{"a", {}}, {"c", {}}, {"b", {}}});
    x.add("L", 2, {{"b", {}}, {"c", {}}, {"a", {}}});
  } else if (name.rfind("simplex:", 0) == 0) {
    try {
      return standard_simplex(std::stoi(name.substr(8)));
    } catch (const std::logic_error&) {
      fail(ErrorCode::InvalidArgument, "expected simplex:<n>");
    }
  } else if (name.rfind("bz-mod-l:", 0) == 0) {
    auto rest = name.substr(9);
    auto colon = rest.find(':');
    if (colon == std::string::npos) fail(ErrorCode::InvalidArgument, "expected bz-mod-l:<l>:<dim>");
    try {
      return bar_construction(static_cast<unsigned>(std::stoul(rest.substr(0, colon))), std::stoi(rest.substr(colon + 1)));
    } catch (const std::logic_error&) {
      fail(ErrorCode::InvalidArgument, "expected bz-mod-l:<l>:<dim>");
    }
  } else {
    fail(ErrorCode::InvalidArgument, "unknown built-in space '" + name + "'");
  }
  return x;
}

}  // namespace tame::cenkl
