#pragma once

#include <vector>

#include "uhp/common.hpp"

namespace uhp {

using zint = __int128;

// Dense row-major integer matrix. Entries are 128-bit so that the
// intermediate growth of Smith reduction stays exact; magnitudes are
// guarded against wrap-around.
struct ZMat {
    int rows = 0, cols = 0;
    std::vector<zint> a;

    ZMat() = default;
    ZMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}
    static ZMat identity(int n);

    zint& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    zint at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
    i64 at64(int i, int j) const;

    void swap_rows(int i, int j);
    void swap_cols(int i, int j);
    void scale_row(int i, zint s);
    void scale_col(int j, zint s);
    void add_row(int dst, int src, zint k);  // row_dst += k * row_src
    void add_col(int dst, int src, zint k);  // col_dst += k * col_src
};

ZMat zmul(const ZMat& a, const ZMat& b);

// Smith normal form s = u * a * v with u, v unimodular; diag is the
// divisor chain (nonnegative), rank the number of nonzero entries.
struct SmithResult {
    ZMat s, u, v, vinv;
    std::vector<i64> diag;
    int rank = 0;
};

SmithResult smith_normal_form(const ZMat& a);

}  // namespace uhp
