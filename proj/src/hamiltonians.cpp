#include "sykmagic/hamiltonians.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "sykmagic/rng.hpp"

namespace sykmagic {

namespace {

constexpr std::uint32_t kSidecarMagic = 0x434b5953u;  // "SYKC" little-endian
constexpr std::uint32_t kSidecarVersion = 1;

void check_even_n(int n_sites, int minimum, const char* what) {
    if (n_sites < minimum || n_sites > kMaxSites || (n_sites % 2) != 0)
        throw std::invalid_argument(std::string(what) +
                                    ": n_sites must be even and in range");
}

inline int jw_sign(FockIndex mask, int site) {
    const FockIndex below = mask & ((FockIndex{1} << site) - 1);
    return (std::popcount(below) & 1) ? -1 : 1;
}

}  // namespace

std::string to_string(ModelKind kind) {
    return kind == ModelKind::SYK2 ? "syk2" : "syk4";
}

ModelKind model_kind_from_string(std::string_view s) {
    if (s == "syk2") return ModelKind::SYK2;
    if (s == "syk4" || s == "syk") return ModelKind::SYK4;
    throw std::invalid_argument("unknown model kind: " + std::string(s));
}

ModelInstance sample_syk2(int n_sites, double j, std::uint64_t seed, double mu) {
    check_even_n(n_sites, 2, "sample_syk2");
    ModelInstance m;
    m.kind = ModelKind::SYK2;
    m.n_sites = n_sites;
    m.coupling_j = j;
    m.mu = mu;
    m.seed = seed;
    m.prng_id = kPrngId;
    m.j2 = Eigen::MatrixXcd::Zero(n_sites, n_sites);

    Rng rng(derive_seed(seed, 2));
    const double sigma = j / std::sqrt(static_cast<double>(n_sites));
    // Draw order fixed: diagonal first (real), then upper triangle row-major.
    for (int i = 0; i < n_sites; ++i) m.j2(i, i) = sigma * rng.gaussian();
    const double s_part = sigma / std::sqrt(2.0);
    for (int i = 0; i < n_sites; ++i) {
        for (int k = i + 1; k < n_sites; ++k) {
            const std::complex<double> v{s_part * rng.gaussian(), s_part * rng.gaussian()};
            m.j2(i, k) = v;
            m.j2(k, i) = std::conj(v);
        }
    }
    return m;
}

ModelInstance sample_syk4(int n_sites, double j, std::uint64_t seed, double mu) {
    check_even_n(n_sites, 4, "sample_syk4");
    ModelInstance m;
    m.kind = ModelKind::SYK4;
    m.n_sites = n_sites;
    m.coupling_j = j;
    m.mu = mu;
    m.seed = seed;
    m.prng_id = kPrngId;
    const int n = n_sites;
    m.j4.assign(static_cast<std::size_t>(n) * n * n * n, {0, 0});

    const double var = j * j / std::pow(2.0 * n, 3);
    const double sigma = std::sqrt(var);
    const double s_part = sigma / std::sqrt(2.0);

    Rng rng(derive_seed(seed, 4));

    auto set_family = [&](int i, int jj, int k, int l, std::complex<double> v) {
        // Antisymmetry in (i,j) and (k,l) spreads one draw over four slots.
        auto at = [&](int a, int b, int c, int d) -> std::complex<double>& {
            return m.j4[static_cast<std::size_t>(((a * n + b) * n + c) * n + d)];
        };
        at(i, jj, k, l) = v;
        at(jj, i, k, l) = -v;
        at(i, jj, l, k) = -v;
        at(jj, i, l, k) = v;
    };

    // Representatives: ordered pairs p = (i<j), q = (k<l) with p <= q in the
    // lexicographic pair order. p == q is forced real by Hermiticity.
    for (int i = 0; i < n; ++i) {
        for (int jj = i + 1; jj < n; ++jj) {
            for (int k = i; k < n; ++k) {
                for (int l = k + 1; l < n; ++l) {
                    if (k == i && l < jj) continue;  // below the pair diagonal
                    std::complex<double> v;
                    if (k == i && l == jj) {
                        v = {sigma * rng.gaussian(), 0.0};
                        set_family(i, jj, k, l, v);
                    } else {
                        v = {s_part * rng.gaussian(), s_part * rng.gaussian()};
                        set_family(i, jj, k, l, v);
                        set_family(k, l, i, jj, std::conj(v));
                    }
                }
            }
        }
    }
    return m;
}

Eigen::MatrixXcd build_sector_matrix(const ModelInstance& model, const SectorBasis& basis) {
    if (model.n_sites != basis.n_sites())
        throw std::invalid_argument("build_sector_matrix: dimension mismatch");
    const int n = model.n_sites;
    const auto dim = static_cast<Eigen::Index>(basis.size());
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);

    for (Eigen::Index col = 0; col < dim; ++col) {
        const FockIndex s = basis.states()[static_cast<std::size_t>(col)];
        h(col, col) -= model.mu * static_cast<double>(std::popcount(s));

        if (model.kind == ModelKind::SYK2) {
            // sum_ij J_ij c^dag_i c_j
            for (int jj = 0; jj < n; ++jj) {
                if (!((s >> jj) & 1u)) continue;
                const int sgn_j = jw_sign(s, jj);
                const FockIndex mid = s ^ (FockIndex{1} << jj);
                for (int i = 0; i < n; ++i) {
                    if ((mid >> i) & 1u) continue;
                    const int sgn_i = jw_sign(mid, i);
                    const FockIndex out = mid | (FockIndex{1} << i);
                    h(static_cast<Eigen::Index>(basis.rank(out)), col) +=
                        model.j2(i, jj) * static_cast<double>(sgn_i * sgn_j);
                }
            }
        } else {
            // 4 * sum_{i<j, k<l} J_ijkl c^dag_i c^dag_j c_k c_l
            for (int l = 0; l < n; ++l) {
                if (!((s >> l) & 1u)) continue;
                const int sgn_l = jw_sign(s, l);
                const FockIndex s1 = s ^ (FockIndex{1} << l);
                for (int k = 0; k < l; ++k) {
                    if (!((s1 >> k) & 1u)) continue;
                    const int sgn_k = jw_sign(s1, k);
                    const FockIndex s2 = s1 ^ (FockIndex{1} << k);
                    for (int jj = 0; jj < n; ++jj) {
                        if ((s2 >> jj) & 1u) continue;
                        const int sgn_j = jw_sign(s2, jj);
                        const FockIndex s3 = s2 | (FockIndex{1} << jj);
                        for (int i = 0; i < jj; ++i) {
                            if ((s3 >> i) & 1u) continue;
                            const int sgn_i = jw_sign(s3, i);
                            const FockIndex out = s3 | (FockIndex{1} << i);
                            h(static_cast<Eigen::Index>(basis.rank(out)), col) +=
                                4.0 * model.j4_at(i, jj, k, l) *
                                static_cast<double>(sgn_l * sgn_k * sgn_j * sgn_i);
                        }
                    }
                }
            }
        }
    }
    return h;
}

namespace {

void write_u32(std::ofstream& f, std::uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    f.write(reinterpret_cast<const char*>(b), 4);
}

void write_u64(std::ofstream& f, std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    f.write(reinterpret_cast<const char*>(b), 8);
}

void write_f64(std::ofstream& f, double v) {
    std::uint64_t u;
    std::memcpy(&u, &v, 8);
    write_u64(f, u);
}

std::uint32_t read_u32(std::ifstream& f) {
    unsigned char b[4];
    f.read(reinterpret_cast<char*>(b), 4);
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
    return v;
}

std::uint64_t read_u64(std::ifstream& f) {
    unsigned char b[8];
    f.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
    return v;
}

double read_f64(std::ifstream& f) {
    const std::uint64_t u = read_u64(f);
    double v;
    std::memcpy(&v, &u, 8);
    return v;
}

}  // namespace

void dump_couplings(const ModelInstance& model, const std::filesystem::path& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("dump_couplings: cannot open " + path.string());
    write_u32(f, kSidecarMagic);
    write_u32(f, kSidecarVersion);
    write_u32(f, model.kind == ModelKind::SYK2 ? 2u : 4u);
    write_u32(f, static_cast<std::uint32_t>(model.n_sites));
    write_u64(f, model.seed);
    write_f64(f, model.coupling_j);
    write_f64(f, model.mu);
    write_u32(f, static_cast<std::uint32_t>(model.prng_id.size()));
    f.write(model.prng_id.data(), static_cast<std::streamsize>(model.prng_id.size()));

    const int n = model.n_sites;
    if (model.kind == ModelKind::SYK2) {
        // Canonical order: diagonal, then upper triangle row-major.
        for (int i = 0; i < n; ++i) write_f64(f, model.j2(i, i).real());
        for (int i = 0; i < n; ++i)
            for (int k = i + 1; k < n; ++k) {
                write_f64(f, model.j2(i, k).real());
                write_f64(f, model.j2(i, k).imag());
            }
    } else {
        // Canonical order: representatives (i<j, k<l), full pair square.
        for (int i = 0; i < n; ++i)
            for (int jj = i + 1; jj < n; ++jj)
                for (int k = 0; k < n; ++k)
                    for (int l = k + 1; l < n; ++l) {
                        const auto v = model.j4_at(i, jj, k, l);
                        write_f64(f, v.real());
                        write_f64(f, v.imag());
                    }
    }
}

ModelInstance load_couplings(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("load_couplings: cannot open " + path.string());
    if (read_u32(f) != kSidecarMagic) throw std::runtime_error("load_couplings: bad magic");
    if (read_u32(f) != kSidecarVersion) throw std::runtime_error("load_couplings: bad version");
    const std::uint32_t kind = read_u32(f);
    const int n = static_cast<int>(read_u32(f));

    ModelInstance m;
    m.kind = (kind == 2) ? ModelKind::SYK2 : ModelKind::SYK4;
    m.n_sites = n;
    m.seed = read_u64(f);
    m.coupling_j = read_f64(f);
    m.mu = read_f64(f);
    const auto id_len = read_u32(f);
    m.prng_id.resize(id_len);
    f.read(m.prng_id.data(), id_len);

    if (m.kind == ModelKind::SYK2) {
        m.j2 = Eigen::MatrixXcd::Zero(n, n);
        for (int i = 0; i < n; ++i) m.j2(i, i) = read_f64(f);
        for (int i = 0; i < n; ++i)
            for (int k = i + 1; k < n; ++k) {
                const double re = read_f64(f), im = read_f64(f);
                m.j2(i, k) = {re, im};
                m.j2(k, i) = {re, -im};
            }
    } else {
        m.j4.assign(static_cast<std::size_t>(n) * n * n * n, {0, 0});
        auto at = [&](int a, int b, int c, int d) -> std::complex<double>& {
            return m.j4[static_cast<std::size_t>(((a * n + b) * n + c) * n + d)];
        };
        for (int i = 0; i < n; ++i)
            for (int jj = i + 1; jj < n; ++jj)
                for (int k = 0; k < n; ++k)
                    for (int l = k + 1; l < n; ++l) {
                        const double re = read_f64(f), im = read_f64(f);
                        const std::complex<double> v{re, im};
                        at(i, jj, k, l) = v;
                        at(jj, i, k, l) = -v;
                        at(i, jj, l, k) = -v;
                        at(jj, i, l, k) = v;
                    }
    }
    if (!f) throw std::runtime_error("load_couplings: truncated file");
    return m;
}

}  // namespace sykmagic
