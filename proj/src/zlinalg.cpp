#include "uhp/zlinalg.hpp"

#include <algorithm>

namespace uhp {

namespace {
const zint GUARD = zint(1) << 110;
zint zabs(zint x) { return x < 0 ? -x : x; }
zint guarded(zint x) {
    if (zabs(x) > GUARD) throw Error("entry growth beyond guard in ZMat");
    return x;
}
// g = gcd(a,b) > 0 with x a + y b = g
zint ext_gcd(zint a, zint b, zint& x, zint& y) {
    if (b == 0) {
        x = a < 0 ? -1 : 1;
        y = 0;
        return zabs(a);
    }
    zint x1, y1;
    zint g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}
}  // namespace

ZMat ZMat::identity(int n) {
    ZMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

i64 ZMat::at64(int i, int j) const {
    zint x = at(i, j);
    if (x > zint(INT64_MAX) || x < zint(INT64_MIN)) throw Error("ZMat entry exceeds 64 bits");
    return static_cast<i64>(x);
}

void ZMat::swap_rows(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < cols; ++c) std::swap(at(i, c), at(j, c));
}
void ZMat::swap_cols(int i, int j) {
    if (i == j) return;
    for (int r = 0; r < rows; ++r) std::swap(at(r, i), at(r, j));
}
void ZMat::scale_row(int i, zint s) {
    for (int c = 0; c < cols; ++c) at(i, c) = guarded(at(i, c) * s);
}
void ZMat::scale_col(int j, zint s) {
    for (int r = 0; r < rows; ++r) at(r, j) = guarded(at(r, j) * s);
}
void ZMat::add_row(int dst, int src, zint k) {
    for (int c = 0; c < cols; ++c) at(dst, c) = guarded(at(dst, c) + k * at(src, c));
}
void ZMat::add_col(int dst, int src, zint k) {
    for (int r = 0; r < rows; ++r) at(r, dst) = guarded(at(r, dst) + k * at(r, src));
}

ZMat zmul(const ZMat& a, const ZMat& b) {
    if (a.cols != b.rows) throw Error("zmul shape mismatch");
    ZMat r(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k) {
            zint aik = a.at(i, k);
            if (!aik) continue;
            for (int j = 0; j < b.cols; ++j)
                r.at(i, j) = guarded(r.at(i, j) + aik * b.at(k, j));
        }
    return r;
}

SmithResult smith_normal_form(const ZMat& input) {
    SmithResult res;
    res.s = input;
    ZMat& s = res.s;
    res.u = ZMat::identity(s.rows);
    res.v = ZMat::identity(s.cols);
    res.vinv = ZMat::identity(s.cols);
    ZMat& u = res.u;
    ZMat& v = res.v;
    ZMat& vinv = res.vinv;

    // rows (r1, r2) <- (al r1 + be r2, ga r1 + de r2), det = +1
    auto two_rows = [&](ZMat& m, int r1, int r2, zint al, zint be, zint ga, zint de) {
        for (int c = 0; c < m.cols; ++c) {
            zint x = m.at(r1, c), y = m.at(r2, c);
            m.at(r1, c) = guarded(al * x + be * y);
            m.at(r2, c) = guarded(ga * x + de * y);
        }
    };
    auto two_cols = [&](ZMat& m, int c1, int c2, zint al, zint be, zint ga, zint de) {
        for (int r = 0; r < m.rows; ++r) {
            zint x = m.at(r, c1), y = m.at(r, c2);
            m.at(r, c1) = guarded(al * x + be * y);
            m.at(r, c2) = guarded(ga * x + de * y);
        }
    };

    auto row_combine = [&](int r, int i) {  // clear s(i, r) against pivot s(r, r)
        zint a = s.at(r, r), b = s.at(i, r);
        if (b == 0) return;
        if (a != 0 && b % a == 0) {
            s.add_row(i, r, -(b / a));
            u.add_row(i, r, -(b / a));
            return;
        }
        zint x, y;
        zint g = ext_gcd(a, b, x, y);
        two_rows(s, r, i, x, y, -(b / g), a / g);
        two_rows(u, r, i, x, y, -(b / g), a / g);
    };
    auto col_combine = [&](int r, int j) {  // clear s(r, j) against pivot s(r, r)
        zint a = s.at(r, r), b = s.at(r, j);
        if (b == 0) return;
        if (a != 0 && b % a == 0) {
            zint k = -(b / a);
            s.add_col(j, r, k);
            v.add_col(j, r, k);
            vinv.add_row(r, j, -k);
            return;
        }
        zint x, y;
        zint g = ext_gcd(a, b, x, y);
        // E block on (r, j): [[x, -b/g], [y, a/g]], E^{-1} = [[a/g, b/g], [-y, x]]
        two_cols(s, r, j, x, y, -(b / g), a / g);
        two_cols(v, r, j, x, y, -(b / g), a / g);
        two_rows(vinv, r, j, a / g, b / g, -y, x);
    };
    auto col_swap = [&](int i, int j) {
        s.swap_cols(i, j);
        v.swap_cols(i, j);
        vinv.swap_rows(i, j);
    };
    auto row_swap = [&](int i, int j) {
        s.swap_rows(i, j);
        u.swap_rows(i, j);
    };

    int n = std::min(s.rows, s.cols);
    int r = 0;
    for (; r < n; ++r) {
        int pi = -1, pj = -1;
        zint best = 0;
        for (int i = r; i < s.rows; ++i)
            for (int j = r; j < s.cols; ++j) {
                zint x = zabs(s.at(i, j));
                if (x != 0 && (best == 0 || x < best)) { best = x; pi = i; pj = j; }
            }
        if (pi < 0) break;
        row_swap(r, pi);
        col_swap(r, pj);

        auto clear_cross = [&]() {
            bool dirty = true;
            while (dirty) {
                dirty = false;
                for (int i = r + 1; i < s.rows; ++i)
                    if (s.at(i, r) != 0) { row_combine(r, i); dirty = true; }
                for (int j = r + 1; j < s.cols; ++j)
                    if (s.at(r, j) != 0) { col_combine(r, j); dirty = true; }
            }
        };
        clear_cross();
        // divisor chain: fold in any entry the pivot does not divide
        for (;;) {
            int bi = -1;
            for (int i = r + 1; i < s.rows && bi < 0; ++i)
                for (int j = r + 1; j < s.cols; ++j)
                    if (s.at(i, j) % s.at(r, r) != 0) { bi = i; break; }
            if (bi < 0) break;
            s.add_row(r, bi, 1);
            u.add_row(r, bi, 1);
            clear_cross();
        }
        if (s.at(r, r) < 0) { s.scale_row(r, -1); u.scale_row(r, -1); }
    }
    res.rank = r;
    res.diag.assign(static_cast<size_t>(n), 0);
    for (int i = 0; i < n; ++i) res.diag[static_cast<size_t>(i)] = s.at64(i, i);
    return res;
}

}  // namespace uhp
