#pragma once

#include <cstdint>
#include <utility>

#include "bigint.hpp"
#include "surd.hpp"

namespace qcf {

// a + b x_D in the basis {1, x_D}.
struct AlgInt
{
	BigInt a, b;
	bool operator==(const AlgInt &) const = default;
};

// Row-major [[m00, m01], [m10, m11]].
struct Mat2
{
	BigInt m00, m01, m10, m11;

	static Mat2 identity() { return { 1, 0, 0, 1 }; }
	BigInt det() const { return m00 * m11 - m01 * m10; }
	BigInt trace() const { return m00 + m11; }
	Mat2 operator*(const Mat2 & o) const;
	Mat2 operator+(const Mat2 & o) const;
	bool operator==(const Mat2 &) const = default;
};

// A real quadratic field Q(sqrt m) with its maximal order Z[x_D].
// x_D = (1 + sqrt m) / 2 when m = 1 mod 4, sqrt m otherwise, so Z[x_D] has discriminant D.
struct FieldData
{
	BigInt m;	// squarefree radicand > 1
	BigInt D;	// fundamental discriminant
	Surd xD;
	BigInt gen_trace;	// x_D^2 = gen_trace x_D - gen_norm
	BigInt gen_norm;
	AlgInt eps;		// fundamental unit > 1
	double reg;		// ln(eps)
	int unit_norm;	// Norm(eps)
};

// Accepts a squarefree m > 1 or a fundamental discriminant D > 1.
FieldData field_data(const BigInt & m_or_D);

AlgInt add(const AlgInt & x, const AlgInt & y);
AlgInt mul(const FieldData & f, const AlgInt & x, const AlgInt & y);
AlgInt pow(const FieldData & f, const AlgInt & x, uint64_t e);
BigInt norm(const FieldData & f, const AlgInt & x);
BigInt trace(const FieldData & f, const AlgInt & x);
// Value under the real embedding (x_D > its conjugate).
double to_double(const FieldData & f, const AlgInt & x);

// Coordinates of a field element written as a surd: x = u + v x_D. Throws if x is outside the field.
std::pair<Rational, Rational> basis_coords(const FieldData & f, const Surd & x);
// The surd for u + v x_D (v != 0).
Surd surd_of(const FieldData & f, const Rational & u, const Rational & v);

// Matrix of multiplication by alpha in the basis {1, x_D}, rows = images of 1 and x_D.
Mat2 phi(const FieldData & f, const AlgInt & alpha);

// Disc(Z[N x_D]) via Disc(O_K) (O_K : O)^2.
BigInt disc_of_suborder(const FieldData & f, const BigInt & N);

// alpha in Z[N x_D], decided both by b = 0 mod N and by phi(alpha) scalar mod N; throws if they disagree.
bool in_suborder(const FieldData & f, const AlgInt & alpha, const BigInt & N);

// min k >= 1 with phi(eps)^k = +I or -I mod N.
uint64_t R_of(const FieldData & f, uint64_t N);

// min k >= 1 with phi(eps)^k scalar mod N, i.e. the unit index (O_D^x : O_{N^2 D}^x).
// Divides R_of(f, N); the two differ when a non-trivial scalar lambda I with lambda^2 = +-1 occurs.
uint64_t unit_index(const FieldData & f, uint64_t N);

// The order O_{f^2 D} = Z[f x_D].
struct OrderSpec
{
	FieldData field;
	BigInt f;

	BigInt disc() const { return f * f * field.D; }
};

// Reg(O_D) times the unit index of the suborder.
double regulator_of_order(const OrderSpec & o);

// The l with O_x = {a : a Lambda_x in Lambda_x} = Z[l x_D], Lambda_x = Z + Z x.
BigInt conductor_of_surd(const FieldData & f, const Surd & x);

// The unit u + v sqrt(D_x) > 1 generating the positive units of the multiplier ring of Z + Z x,
// read off the reduced cycle of the expansion of x.
struct CycleUnit
{
	Rational u, v;
	int norm;
	size_t period_length;
};
CycleUnit cycle_unit(const Surd & x);

}
