#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>

#include "stmodkit/matrix.hpp"
#include "stmodkit/subspace.hpp"

using namespace stmodkit;

namespace {

std::uint64_t splitmix(std::uint64_t& s) {
    s += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Matrix random_matrix(Field f, std::size_t r, std::size_t c, std::uint64_t seed) {
    Matrix m(f, r, c);
    std::uint64_t s = seed;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            m(i, j) = static_cast<std::uint8_t>(splitmix(s) % f.cardinality);
    return m;
}

// Enumerate every vector of F3^n (used as a brute-force oracle at tiny sizes).
bool next_vec(Vec& v, std::uint8_t q) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (++v[i] < q) return true;
        v[i] = 0;
    }
    return false;
}

} // namespace

TEST_CASE("matrix element access carries the field") {
    Field f4 = Field::f4();
    Matrix m(f4, 1, 2);
    m(0, 1) = 2;
    CHECK(m.elem(0, 1) == FieldElement{f4, 2});
    CHECK((m.elem(0, 1) * m.elem(0, 1)).code == 3);
}

TEST_CASE("rref basics") {
    Field f3 = Field::f3();
    Matrix id = Matrix::identity(f3, 3);
    RrefResult r = rref(id);
    CHECK(r.mat == id);
    CHECK(r.rank == 3);

    Matrix z(f3, 2, 5);
    RrefResult rz = rref(z);
    CHECK(rz.rank == 0);
    CHECK(rz.mat.is_zero());
}

TEST_CASE("rref over F4 detects dependent rows") {
    // [[1, w], [wbar, 1]]: second row is wbar times the first since wbar*w = 1.
    Field f4 = Field::f4();
    Matrix m(f4, 2, 2);
    m(0, 0) = 1;
    m(0, 1) = 2;
    m(1, 0) = 3;
    m(1, 1) = 1;
    RrefResult r = rref(m);
    CHECK(r.rank == 1);
    CHECK(r.mat(0, 0) == 1);
    CHECK(r.mat(0, 1) == 2);
}

TEST_CASE("nullspace basics") {
    Field f3 = Field::f3();
    CHECK(nullspace(Matrix::identity(f3, 4)).dim() == 0);
    Matrix z(f3, 3, 3);
    Subspace full = nullspace(z);
    CHECK(full.dim() == 3);
    CHECK(full == Subspace::full(f3, 3));
}

TEST_CASE("rank-nullity on random matrices") {
    for (Field f : {Field::f2(), Field::f3(), Field::f4()}) {
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            Matrix m = random_matrix(f, 5, 7, seed);
            CHECK(rank_of(m) + nullspace(m).dim() == m.cols());
            CHECK(rank_of(m) == rref(m).rank);
            // kernel vectors really are killed
            Subspace k = nullspace(m);
            for (std::size_t i = 0; i < k.dim(); ++i) {
                Vec y = m.apply(k.basis().row(i));
                for (auto v : y) CHECK(v == 0);
            }
        }
    }
}

TEST_CASE("solve basics") {
    Field f3 = Field::f3();
    Matrix id = Matrix::identity(f3, 3);
    Vec b = {1, 2, 0};
    auto x = solve(id, b);
    REQUIRE(x.has_value());
    CHECK(*x == b);

    Matrix z(f3, 3, 3);
    CHECK(!solve(z, b).has_value());
    Vec zero(3, 0);
    auto xz = solve(z, zero);
    CHECK(xz.has_value());
}

TEST_CASE("solve solvability matches column space membership, brute force dims <= 4") {
    Field f3 = Field::f3();
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        Matrix m = random_matrix(f3, 3, 4, seed * 17);
        Subspace img = column_space(m);
        Vec b(3, 0);
        do {
            auto x = solve(m, b);
            CHECK(x.has_value() == img.contains(b));
            if (x) CHECK(m.apply(*x) == b);
        } while (next_vec(b, 3));
    }
}

TEST_CASE("subspace lattice identities") {
    Field f3 = Field::f3();
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        Subspace u = row_space(random_matrix(f3, 3, 6, seed));
        Subspace v = row_space(random_matrix(f3, 2, 6, seed + 100));
        Subspace s = subspace_sum(u, v);
        Subspace i = subspace_intersect(u, v);
        CHECK(u.dim() + v.dim() == s.dim() + i.dim()); // Grassmann
        CHECK(subspace_intersect(u, u) == u);
        CHECK(subspace_sum(u, Subspace::zero(f3, 6)) == u);
        CHECK(s.contains(u));
        CHECK(s.contains(v));
        CHECK(u.contains(i));
        CHECK(v.contains(i));
    }
}

TEST_CASE("modular law via exhaustive vector check in F3^6") {
    Field f3 = Field::f3();
    for (std::uint64_t seed = 3; seed <= 10; ++seed) {
        Subspace u = row_space(random_matrix(f3, 2, 6, seed));
        Subspace w = subspace_sum(u, row_space(random_matrix(f3, 2, 6, seed + 55)));
        Subspace v = row_space(random_matrix(f3, 3, 6, seed + 200));
        // u <= w  =>  u + (v ∩ w) = (u + v) ∩ w
        Subspace lhs = subspace_sum(u, subspace_intersect(v, w));
        Subspace rhs = subspace_intersect(subspace_sum(u, v), w);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("preimage of the column space has full dimension") {
    for (Field f : {Field::f3(), Field::f4()}) {
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            Matrix m = random_matrix(f, 5, 5, seed * 31);
            Subspace img = column_space(m);
            CHECK(subspace_preimage(m, img).dim() == m.cols());
        }
    }
}

TEST_CASE("preimage and image are adjoint-ish") {
    Field f3 = Field::f3();
    Matrix m = random_matrix(f3, 4, 4, 99);
    Subspace v = row_space(random_matrix(f3, 2, 4, 7));
    Subspace pre = subspace_preimage(m, v);
    // every vector of the preimage maps into v
    for (std::size_t i = 0; i < pre.dim(); ++i) CHECK(v.contains(m.apply(pre.basis().row(i))));
}

TEST_CASE("subspace coordinates and complements") {
    Field f3 = Field::f3();
    Subspace u = row_space(random_matrix(f3, 3, 5, 5));
    for (std::size_t i = 0; i < u.dim(); ++i) {
        Vec v = u.basis().row(i);
        CHECK(u.contains(v));
        Vec c = u.coordinates(v);
        Vec rebuilt(5, 0);
        for (std::size_t j = 0; j < u.dim(); ++j)
            for (std::size_t k = 0; k < 5; ++k)
                rebuilt[k] = f3.add(rebuilt[k], f3.mul(c[j], u.basis()(j, k)));
        CHECK(rebuilt == v);
    }
    CHECK(u.complement_indices().size() == 5 - u.dim());
}

TEST_CASE("dimension mismatch raises") {
    Field f3 = Field::f3();
    Subspace a = Subspace::full(f3, 3);
    Subspace b = Subspace::full(f3, 4);
    CHECK_THROWS_AS((void)subspace_sum(a, b), Error);
    CHECK_THROWS_AS((void)subspace_intersect(a, b), Error);
}
