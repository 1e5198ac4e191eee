/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef PUSHCRIT_GUARD_RATIONAL_HH
#define PUSHCRIT_GUARD_RATIONAL_HH 1

#include <pushcrit/errors.hh>

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>

namespace pushcrit
{
    /// Exact fraction, always in lowest terms with a positive denominator.
    class Rational
    {
        private:
            std::int64_t _num = 0, _den = 1;

        public:
            constexpr Rational() = default;

            constexpr Rational(std::int64_t num, std::int64_t den = 1)
            {
                if (den == 0)
                    throw UndefinedInput("rational with zero denominator");
                if (den < 0) {
                    num = -num;
                    den = -den;
                }
                auto g = std::gcd(num < 0 ? -num : num, den);
                if (g == 0)
                    g = 1;
                _num = num / g;
                _den = den / g;
            }

            [[nodiscard]] constexpr auto numerator() const -> std::int64_t { return _num; }
            [[nodiscard]] constexpr auto denominator() const -> std::int64_t { return _den; }

            constexpr auto operator== (const Rational &) const -> bool = default;

            constexpr auto operator<=> (const Rational & other) const -> std::strong_ordering
            {
                // denominators are positive, so cross multiplication preserves order
                return (static_cast<__int128>(_num) * other._den) <=> (static_cast<__int128>(other._num) * _den);
            }

            [[nodiscard]] auto to_string() const -> std::string
            {
                return _den == 1 ? std::to_string(_num) : std::to_string(_num) + "/" + std::to_string(_den);
            }
    };

    inline auto operator<< (std::ostream & s, const Rational & r) -> std::ostream &
    {
        return s << r.to_string();
    }
}

#endif
