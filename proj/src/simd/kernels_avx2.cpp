// AVX2/FMA variants of the kernels in kernels_scalar.cpp. Compiled with -mavx2 -mfma
// and only reached through the runtime dispatch in dispatch.cpp.

#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "kernels_internal.hpp"

namespace qcl::simd::detail {

namespace {

using V = __m256d;
constexpr std::size_t kWidth = 4;

inline V set1(double v) { return _mm256_set1_pd(v); }
inline V blend(V a, V b, V mask) { return _mm256_blendv_pd(a, b, mask); }

constexpr double kLog2e = 1.4426950408889634074;
// Cody-Waite split of ln 2; the high part has few enough bits that n * hi is exact.
constexpr double kLn2Hi = 6.93145751953125e-1;
constexpr double kLn2Lo = 1.42860682030941723212e-6;
constexpr double kLn2 = 0.69314718055994530942;
constexpr double kSqrt2 = 1.41421356237309504880;

// 1/k!, k = 13 down to 0
constexpr double kExpTaylor[] = {
    1.0 / 6227020800.0, 1.0 / 479001600.0, 1.0 / 39916800.0, 1.0 / 3628800.0, 1.0 / 362880.0,
    1.0 / 40320.0,      1.0 / 5040.0,      1.0 / 720.0,      1.0 / 120.0,     1.0 / 24.0,
    1.0 / 6.0,          0.5,               1.0,              1.0};

V exp4(V x) {
    const V hi = set1(709.0), lo = set1(-708.0);
    const V over = _mm256_cmp_pd(x, hi, _CMP_GT_OQ);
    const V under = _mm256_cmp_pd(x, lo, _CMP_LT_OQ);
    const V nan = _mm256_cmp_pd(x, x, _CMP_UNORD_Q);
    const V xc = _mm256_min_pd(_mm256_max_pd(x, lo), hi);

    const V n = _mm256_round_pd(_mm256_mul_pd(xc, set1(kLog2e)),
                                _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    V g = _mm256_fnmadd_pd(n, set1(kLn2Hi), xc);
    g = _mm256_fnmadd_pd(n, set1(kLn2Lo), g);

    V p = set1(kExpTaylor[0]);
    for (std::size_t k = 1; k < std::size(kExpTaylor); ++k) p = _mm256_fmadd_pd(p, g, set1(kExpTaylor[k]));

    const __m256i e = _mm256_slli_epi64(
        _mm256_add_epi64(_mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(n)), _mm256_set1_epi64x(1023)), 52);
    V res = _mm256_mul_pd(p, _mm256_castsi256_pd(e));
    res = blend(res, set1(std::numeric_limits<double>::infinity()), over);
    res = blend(res, _mm256_setzero_pd(), under);
    return blend(res, x, nan);
}

V log4(V x) {
    const V zero = _mm256_setzero_pd();
    const V is_zero = _mm256_cmp_pd(x, zero, _CMP_EQ_OQ);
    const V invalid = _mm256_cmp_pd(x, zero, _CMP_NGE_UQ);  // x < 0 or NaN
    const V is_inf = _mm256_cmp_pd(x, set1(std::numeric_limits<double>::infinity()), _CMP_EQ_OQ);

    // lift subnormals into the normal range
    const V tiny = _mm256_and_pd(_mm256_cmp_pd(x, set1(std::numeric_limits<double>::min()), _CMP_LT_OQ),
                                 _mm256_cmp_pd(x, zero, _CMP_GT_OQ));
    const V xs = blend(x, _mm256_mul_pd(x, set1(4503599627370496.0)), tiny);

    const __m256i bits = _mm256_castpd_si256(xs);
    const __m256i biased = _mm256_srli_epi64(bits, 52);
    const V two52 = set1(4503599627370496.0);
    V e = _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(biased, _mm256_castpd_si256(two52))), two52);
    e = _mm256_sub_pd(e, set1(1023.0));
    e = _mm256_sub_pd(e, _mm256_and_pd(tiny, set1(52.0)));

    const __m256i mant = _mm256_or_si256(_mm256_and_si256(bits, _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL)),
                                         _mm256_set1_epi64x(0x3FF0000000000000LL));
    V m = _mm256_castsi256_pd(mant);
    const V big = _mm256_cmp_pd(m, set1(kSqrt2), _CMP_GT_OQ);
    m = blend(m, _mm256_mul_pd(m, set1(0.5)), big);
    e = _mm256_add_pd(e, _mm256_and_pd(big, set1(1.0)));

    // log m = 2 atanh(s), s = (m-1)/(m+1), |s| <= 0.1716
    const V s = _mm256_div_pd(_mm256_sub_pd(m, set1(1.0)), _mm256_add_pd(m, set1(1.0)));
    const V s2 = _mm256_mul_pd(s, s);
    V p = set1(1.0 / 23.0);
    for (int k = 10; k >= 0; --k) p = _mm256_fmadd_pd(p, s2, set1(1.0 / (2.0 * k + 1.0)));
    const V logm = _mm256_mul_pd(_mm256_add_pd(s, s), p);

    V res = _mm256_fmadd_pd(e, set1(kLn2Hi), _mm256_fmadd_pd(e, set1(kLn2Lo), logm));
    res = blend(res, set1(-std::numeric_limits<double>::infinity()), is_zero);
    res = blend(res, set1(std::numeric_limits<double>::infinity()), is_inf);
    return blend(res, set1(std::numeric_limits<double>::quiet_NaN()), invalid);
}

V log1p4(V y) {
    const V one = set1(1.0);
    const V u = _mm256_add_pd(one, y);
    const V exact = _mm256_cmp_pd(u, one, _CMP_EQ_OQ);
    const V denom = blend(_mm256_sub_pd(u, one), one, exact);
    const V res = _mm256_div_pd(_mm256_mul_pd(log4(u), y), denom);
    return blend(res, y, exact);
}

V abs4(V x) { return _mm256_andnot_pd(set1(-0.0), x); }

V sinh4(V h) {
    const V h2 = _mm256_mul_pd(h, h);
    // odd Taylor series to h^13 on |h| < 1/4
    V p = set1(1.0 / 6227020800.0);
    p = _mm256_fmadd_pd(p, h2, set1(1.0 / 39916800.0));
    p = _mm256_fmadd_pd(p, h2, set1(1.0 / 362880.0));
    p = _mm256_fmadd_pd(p, h2, set1(1.0 / 5040.0));
    p = _mm256_fmadd_pd(p, h2, set1(1.0 / 120.0));
    p = _mm256_fmadd_pd(p, h2, set1(1.0 / 6.0));
    p = _mm256_fmadd_pd(p, h2, set1(1.0));
    const V series = _mm256_mul_pd(p, h);
    const V eh = exp4(h);
    const V direct = _mm256_mul_pd(set1(0.5), _mm256_sub_pd(eh, _mm256_div_pd(set1(1.0), eh)));
    return blend(direct, series, _mm256_cmp_pd(abs4(h), set1(0.25), _CMP_LT_OQ));
}

// 1 - e^{-y} for y >= 0
V one_minus_exp_neg4(V y) {
    V p = set1(-1.0 / 6227020800.0);
    for (int k = 12; k >= 1; --k) {
        double c = 1.0;
        for (int j = 2; j <= k; ++j) c /= j;
        p = _mm256_fmadd_pd(p, y, set1((k % 2 == 1) ? c : -c));
    }
    const V series = _mm256_mul_pd(p, y);
    const V direct = _mm256_sub_pd(set1(1.0), exp4(_mm256_sub_pd(_mm256_setzero_pd(), y)));
    return blend(direct, series, _mm256_cmp_pd(y, set1(0.25), _CMP_LT_OQ));
}

// Runs body(offset, count) over full vectors, then over a padded copy of the tail.
template <std::size_t NIn, std::size_t NOut, class Body>
void run_padded(std::size_t n, const std::span<const double> (&in)[NIn], const std::span<double> (&out)[NOut],
                double pad, Body&& body) {
    std::size_t i = 0;
    for (; i + kWidth <= n; i += kWidth) {
        V xin[NIn];
        for (std::size_t a = 0; a < NIn; ++a) xin[a] = _mm256_loadu_pd(in[a].data() + i);
        V xout[NOut];
        body(xin, xout);
        for (std::size_t a = 0; a < NOut; ++a) _mm256_storeu_pd(out[a].data() + i, xout[a]);
    }
    if (i == n) return;
    const std::size_t rest = n - i;
    alignas(32) double buf[kWidth];
    V xin[NIn];
    for (std::size_t a = 0; a < NIn; ++a) {
        std::fill(std::begin(buf), std::end(buf), pad);
        std::copy_n(in[a].data() + i, rest, buf);
        xin[a] = _mm256_load_pd(buf);
    }
    V xout[NOut];
    body(xin, xout);
    for (std::size_t a = 0; a < NOut; ++a) {
        _mm256_store_pd(buf, xout[a]);
        std::copy_n(buf, rest, out[a].data() + i);
    }
}

void exp_avx2(std::span<const double> x, std::span<double> out) {
    require_same(x.size(), out.size());
    run_padded<1, 1>(x.size(), {x}, {out}, 0.0, [](const V* in, V* o) { o[0] = exp4(in[0]); });
}

void log_avx2(std::span<const double> x, std::span<double> out) {
    require_same(x.size(), out.size());
    run_padded<1, 1>(x.size(), {x}, {out}, 1.0, [](const V* in, V* o) { o[0] = log4(in[0]); });
}

void weighted_increments_avx2(std::span<const double> x, double r, std::span<const double> dy,
                              std::span<const double> dz, std::span<double> out_re,
                              std::span<double> out_im) {
    require_same(x.size(), dy.size());
    require_same(x.size(), dz.size());
    require_same(x.size(), out_re.size());
    require_same(x.size(), out_im.size());
    const V neg_r = set1(-r);
    run_padded<3, 2>(x.size(), {x, dy, dz}, {out_re, out_im}, 0.0, [&](const V* in, V* o) {
        const V w = exp4(_mm256_mul_pd(neg_r, in[0]));
        o[0] = _mm256_mul_pd(w, in[1]);
        o[1] = _mm256_mul_pd(w, in[2]);
    });
}

void bj_radial_avx2(std::span<const double> x, std::span<const double> i_re,
                    std::span<const double> i_im, double r, std::span<double> out) {
    require_same(x.size(), i_re.size());
    require_same(x.size(), i_im.size());
    require_same(x.size(), out.size());
    const V vr = set1(r), inv_r = set1(1.0 / r), half_r2 = set1(0.5 * r * r);
    const V one = set1(1.0), two = set1(2.0);
    if (r < kLogDomainCurvature) {
        run_padded<3, 1>(x.size(), {x, i_re, i_im}, {out}, 0.0, [&](const V* in, V* o) {
            const V m2 = _mm256_fmadd_pd(in[1], in[1], _mm256_mul_pd(in[2], in[2]));
            const V rx = _mm256_mul_pd(vr, in[0]);
            const V s = sinh4(_mm256_mul_pd(set1(0.5), rx));
            const V eps = _mm256_fmadd_pd(_mm256_mul_pd(two, s), s,
                                          _mm256_mul_pd(_mm256_mul_pd(half_r2, exp4(rx)), m2));
            const V root = _mm256_sqrt_pd(_mm256_mul_pd(eps, _mm256_add_pd(two, eps)));
            o[0] = _mm256_mul_pd(log1p4(_mm256_add_pd(eps, root)), inv_r);
        });
        return;
    }
    const V log_half_r2 = set1(std::log(0.5 * r * r));
    run_padded<3, 1>(x.size(), {x, i_re, i_im}, {out}, 0.0, [&](const V* in, V* o) {
        const V m2 = _mm256_fmadd_pd(in[1], in[1], _mm256_mul_pd(in[2], in[2]));
        const V rx = _mm256_mul_pd(vr, in[0]);
        const V a = abs4(rx);
        const V l1 = _mm256_add_pd(_mm256_sub_pd(a, set1(kLn2)),
                                   log1p4(exp4(_mm256_mul_pd(set1(-2.0), a))));
        const V l2 = _mm256_add_pd(_mm256_add_pd(log_half_r2, rx), log4(m2));
        const V hi = _mm256_max_pd(l1, l2), lo = _mm256_min_pd(l1, l2);
        const V l = _mm256_add_pd(hi, log1p4(exp4(_mm256_sub_pd(lo, hi))));
        const V tail = log1p4(_mm256_sqrt_pd(one_minus_exp_neg4(_mm256_mul_pd(two, l))));
        o[0] = _mm256_mul_pd(_mm256_add_pd(l, tail), inv_r);
        (void)one;
    });
}

void orbit_coordinates_avx2(std::span<const double> u, double lambda, double r,
                            std::span<double> mu, std::span<double> f_abs) {
    require_same(u.size(), mu.size());
    require_same(u.size(), f_abs.size());
    const V tail = set1(std::exp(-2.0 * r * lambda));
    const V vl = set1(lambda), neg_l = set1(-lambda), inv_r = set1(1.0 / r), half_r = set1(0.5 * r);
    const V inv_2r = set1(1.0 / (2.0 * r));
    run_padded<1, 2>(u.size(), {u}, {mu, f_abs}, 0.5, [&](const V* in, V* o) {
        const V w = _mm256_fmadd_pd(_mm256_sub_pd(set1(1.0), in[0]), tail, in[0]);
        V m = _mm256_fmadd_pd(log4(w), inv_r, vl);
        m = _mm256_min_pd(_mm256_max_pd(m, neg_l), vl);
        const V s1 = sinh4(_mm256_mul_pd(half_r, _mm256_add_pd(vl, m)));
        const V s2 = sinh4(_mm256_mul_pd(half_r, _mm256_sub_pd(vl, m)));
        o[0] = m;
        o[1] = _mm256_mul_pd(_mm256_sqrt_pd(_mm256_mul_pd(set1(4.0), _mm256_mul_pd(s1, s2))), inv_2r);
    });
}

Moments moments_avx2(std::span<const double> x) {
    V s = _mm256_setzero_pd(), q = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + kWidth <= x.size(); i += kWidth) {
        const V v = _mm256_loadu_pd(x.data() + i);
        s = _mm256_add_pd(s, v);
        q = _mm256_fmadd_pd(v, v, q);
    }
    alignas(32) double bs[kWidth], bq[kWidth];
    _mm256_store_pd(bs, s);
    _mm256_store_pd(bq, q);
    Moments m{(bs[0] + bs[1]) + (bs[2] + bs[3]), (bq[0] + bq[1]) + (bq[2] + bq[3])};
    for (; i < x.size(); ++i) {
        m.sum += x[i];
        m.sum_sq += x[i] * x[i];
    }
    return m;
}

}  // namespace

const KernelTable kAvx2Table{Backend::avx2,          exp_avx2,
                             log_avx2,               weighted_increments_avx2,
                             bj_radial_avx2,         orbit_coordinates_avx2,
                             moments_avx2};

}  // namespace qcl::simd::detail
