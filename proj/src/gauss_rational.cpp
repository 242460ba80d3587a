#include "heis/gauss_rational.hpp"

namespace heis {

std::string rational_str(const mpq_class &q) {
    return q.get_str();
}

std::string GaussRational::str() const {
    if (is_zero()) return "0";
    std::string out;
    if (re_ != 0) out = rational_str(re_);
    if (im_ != 0) {
        std::string ims;
        if (im_ == 1)
            ims = "i";
        else if (im_ == -1)
            ims = "-i";
        else
            ims = rational_str(im_) + "*i";
        if (out.empty())
            out = ims;
        else if (ims[0] == '-')
            out += " - " + ims.substr(1);
        else
            out += " + " + ims;
    }
    return out;
}

std::optional<mpq_class> rational_sqrt(const mpq_class &q) {
    if (q < 0) return std::nullopt;
    if (q == 0) return mpq_class(0);
    mpz_class num = q.get_num(), den = q.get_den();
    if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return std::nullopt;
    if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    return mpq_class(rn, rd);
}

std::optional<GaussRational> gauss_sqrt(const GaussRational &z) {
    const mpq_class &a = z.re(), &b = z.im();
    if (b == 0) {
        if (a >= 0) {
            auto r = rational_sqrt(a);
            if (!r) return std::nullopt;
            return GaussRational(*r, mpq_class(0));
        }
        auto r = rational_sqrt(-a);
        if (!r) return std::nullopt;
        return GaussRational(mpq_class(0), *r);
    }
    // (x+yi)^2 = a+bi needs x^2 = (a + sqrt(a^2+b^2))/2, y = b/(2x)
    auto n = rational_sqrt(a * a + b * b);
    if (!n) return std::nullopt;
    mpq_class x2 = (a + *n) / 2;
    auto x = rational_sqrt(x2);
    if (!x || *x == 0) return std::nullopt;
    mpq_class y = b / (2 * (*x));
    return GaussRational(*x, y);
}

} // namespace heis
