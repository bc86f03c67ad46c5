#ifndef SUSPEDF_TIME_VALUE_HPP
#define SUSPEDF_TIME_VALUE_HPP

#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace suspedf {

// Raised when a rational literal cannot be parsed.
class ParseError : public std::invalid_argument
{
public:
	using std::invalid_argument::invalid_argument;
};

/* Exact rational time.
 *
 * Backed by GMP's mpq_class, which keeps the value canonical (reduced,
 * positive denominator) after every operation. There is no rounding
 * anywhere; comparisons at equality boundaries are exact.
 */
class TimeValue
{
public:
	TimeValue() = default;
	TimeValue(std::int64_t integer);
	TimeValue(std::int64_t numerator, std::int64_t denominator);
	explicit TimeValue(mpq_class value);

	// Accepts "p" or "p/q" with decimal integers and an optional leading
	// '-' on p. Anything else (floats, whitespace, q = 0) is a ParseError.
	static TimeValue parse(std::string_view literal);

	// "p" when the denominator is one, "p/q" otherwise; lowest terms.
	std::string to_string() const;

	mpz_class numerator() const { return value_.get_num(); }
	mpz_class denominator() const { return value_.get_den(); }
	const mpq_class& raw() const { return value_; }

	bool is_integer() const { return value_.get_den() == 1; }
	bool is_zero() const { return sgn(value_) == 0; }
	bool is_positive() const { return sgn(value_) > 0; }
	bool is_negative() const { return sgn(value_) < 0; }

	// Only for drawing; never used in scheduling decisions.
	double to_double() const { return value_.get_d(); }

	TimeValue& operator+=(const TimeValue& other);
	TimeValue& operator-=(const TimeValue& other);
	TimeValue& operator*=(const TimeValue& other);
	TimeValue& operator/=(const TimeValue& other);

	friend TimeValue operator+(TimeValue a, const TimeValue& b) { return a += b; }
	friend TimeValue operator-(TimeValue a, const TimeValue& b) { return a -= b; }
	friend TimeValue operator*(TimeValue a, const TimeValue& b) { return a *= b; }
	friend TimeValue operator/(TimeValue a, const TimeValue& b) { return a /= b; }
	TimeValue operator-() const;

	friend bool operator==(const TimeValue& a, const TimeValue& b)
	{
		return a.value_ == b.value_;
	}

	friend std::strong_ordering operator<=>(const TimeValue& a, const TimeValue& b)
	{
		int c = cmp(a.value_, b.value_);
		if (c < 0)
			return std::strong_ordering::less;
		if (c > 0)
			return std::strong_ordering::greater;
		return std::strong_ordering::equal;
	}

private:
	mpq_class value_{0};
};

// floor(a / b) for b > 0.
mpz_class floor_div(const TimeValue& a, const TimeValue& b);

// Largest g > 0 such that every value is an integer multiple of g.
// Zero entries are ignored; returns 0 when all entries are zero.
TimeValue rational_gcd(std::span<const TimeValue> values);

// Smallest l > 0 such that l / v is a positive integer for every v > 0.
TimeValue rational_lcm(std::span<const TimeValue> values);

std::ostream& operator<<(std::ostream& out, const TimeValue& t);

} // namespace suspedf

#endif
