#include "suspedf/time_value.hpp"

#include <ostream>

namespace suspedf {

namespace {

bool is_decimal(std::string_view digits)
{
	if (digits.empty())
		return false;
	for (char c : digits)
		if (c < '0' || c > '9')
			return false;
	return true;
}

mpz_class parse_integer(std::string_view digits)
{
	return mpz_class(std::string(digits), 10);
}

} // namespace

TimeValue::TimeValue(std::int64_t integer)
	: value_(static_cast<long>(integer))
{
}

TimeValue::TimeValue(std::int64_t numerator, std::int64_t denominator)
{
	if (denominator == 0)
		throw std::domain_error("TimeValue: zero denominator");
	value_ = mpq_class(mpz_class(static_cast<long>(numerator)),
	                   mpz_class(static_cast<long>(denominator)));
	value_.canonicalize();
}

TimeValue::TimeValue(mpq_class value)
	: value_(std::move(value))
{
	value_.canonicalize();
}

TimeValue TimeValue::parse(std::string_view literal)
{
	std::string_view body = literal;
	bool negative = false;
	if (!body.empty() && body.front() == '-') {
		negative = true;
		body.remove_prefix(1);
	}

	auto slash = body.find('/');
	std::string_view num_digits = body.substr(0, slash);
	std::string_view den_digits =
		slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);

	if (!is_decimal(num_digits) || !is_decimal(den_digits))
		throw ParseError("not a rational literal: \"" + std::string(literal) + "\"");

	mpz_class num = parse_integer(num_digits);
	mpz_class den = parse_integer(den_digits);
	if (den == 0)
		throw ParseError("zero denominator in \"" + std::string(literal) + "\"");
	if (negative)
		num = -num;

	mpq_class q(num, den);
	q.canonicalize();
	return TimeValue(std::move(q));
}

std::string TimeValue::to_string() const
{
	if (is_integer())
		return value_.get_num().get_str();
	return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

TimeValue& TimeValue::operator+=(const TimeValue& other)
{
	value_ += other.value_;
	return *this;
}

TimeValue& TimeValue::operator-=(const TimeValue& other)
{
	value_ -= other.value_;
	return *this;
}

TimeValue& TimeValue::operator*=(const TimeValue& other)
{
	value_ *= other.value_;
	return *this;
}

TimeValue& TimeValue::operator/=(const TimeValue& other)
{
	if (other.is_zero())
		throw std::domain_error("TimeValue: division by zero");
	value_ /= other.value_;
	return *this;
}

TimeValue TimeValue::operator-() const
{
	return TimeValue(mpq_class(-value_));
}

mpz_class floor_div(const TimeValue& a, const TimeValue& b)
{
	mpq_class q = a.raw() / b.raw();
	mpz_class result;
	mpz_fdiv_q(result.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
	return result;
}

TimeValue rational_gcd(std::span<const TimeValue> values)
{
	// gcd(p_i / q_i) = gcd(p_i) / lcm(q_i) for reduced fractions
	mpz_class num = 0;
	mpz_class den = 1;
	for (const auto& v : values) {
		if (v.is_zero())
			continue;
		mpz_class p = abs(v.numerator());
		mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t());
		mpz_class q = v.denominator();
		mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_mpz_t());
	}
	return TimeValue(mpq_class(num, den));
}

TimeValue rational_lcm(std::span<const TimeValue> values)
{
	// lcm(p_i / q_i) = lcm(p_i) / gcd(q_i) for reduced fractions
	mpz_class num = 1;
	mpz_class den = 0;
	for (const auto& v : values) {
		if (!v.is_positive())
			throw std::domain_error("rational_lcm: non-positive value " + v.to_string());
		mpz_class p = v.numerator();
		mpz_lcm(num.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t());
		mpz_class q = v.denominator();
		mpz_gcd(den.get_mpz_t(), den.get_mpz_t(), q.get_mpz_t());
	}
	if (den == 0)
		throw std::domain_error("rational_lcm: empty input");
	return TimeValue(mpq_class(num, den));
}

std::ostream& operator<<(std::ostream& out, const TimeValue& t)
{
	return out << t.to_string();
}

} // namespace suspedf
