#pragma once

#include "dualres/integer.hpp"

#include <compare>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace dualres {

/// A power product over named variables, kept sorted by name with no zero
/// exponents.
class Monomial {
public:
    using Factor = std::pair<std::string, unsigned>;

    Monomial() = default;
    explicit Monomial(std::vector<Factor> factors);
    static Monomial variable(std::string name, unsigned exponent = 1);

    const std::vector<Factor>& factors() const { return factors_; }
    unsigned exponent(const std::string& var) const;
    unsigned total_degree() const;
    bool is_one() const { return factors_.empty(); }

    Monomial operator*(const Monomial& rhs) const;
    /// Lowers the exponent of `var` by k; the caller guarantees k <= exponent(var).
    Monomial reduced(const std::string& var, unsigned k) const;
    Monomial without(const std::string& var) const { return reduced(var, exponent(var)); }

    std::string to_string() const;

    friend auto operator<=>(const Monomial&, const Monomial&) = default;
    friend bool operator==(const Monomial&, const Monomial&) = default;

private:
    std::vector<Factor> factors_;
};

class Substitution;

/// Sparse multivariate polynomial with arbitrary-precision integer
/// coefficients. Zero coefficients are never stored.
class Polynomial {
public:
    using TermMap = std::map<Monomial, Integer>;

    Polynomial() = default;
    Polynomial(int constant);  // NOLINT(google-explicit-constructor)
    explicit Polynomial(Integer constant);
    static Polynomial variable(const std::string& name);
    static Polynomial term(Integer coefficient, Monomial monomial);

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    std::set<std::string> variables() const;

    /// Largest exponent of `var` over all terms.
    unsigned degree_in(const std::string& var) const;
    /// Largest k with var^k dividing every term; 0 for the zero polynomial.
    unsigned divisibility_in(const std::string& var) const;
    /// Minimum total degree over terms (the multiplicity at the origin).
    unsigned min_total_degree() const;
    unsigned total_degree() const;

    /// Exact division by var^k. Throws PreconditionError if not divisible.
    Polynomial divided_by_power(const std::string& var, unsigned k) const;
    Polynomial substitute(const Substitution& sub) const;
    /// Sets `var` to a constant.
    Polynomial evaluate(const std::string& var, const Integer& value) const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& rhs);
    Polynomial& operator-=(const Polynomial& rhs);
    Polynomial& operator*=(const Polynomial& rhs);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    Polynomial pow(unsigned e) const;

    std::string to_string() const;

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    void add_term(const Monomial& m, const Integer& c);
    TermMap terms_;
};

/// Simultaneous substitution of variables by polynomials. A variable may not
/// be substituted by an expression that mentions itself.
class Substitution {
public:
    Substitution() = default;

    /// Throws PreconditionError if `image` contains `var`.
    Substitution& set(const std::string& var, Polynomial image);
    const Polynomial* find(const std::string& var) const;
    const std::map<std::string, Polynomial>& images() const { return images_; }

    Polynomial operator()(const Polynomial& f) const { return f.substitute(*this); }

private:
    std::map<std::string, Polynomial> images_;
};

/// Determinant by permutation expansion. Intended for the small generic
/// matrices of the oracle (size <= 4).
Polynomial determinant(const std::vector<std::vector<Polynomial>>& matrix);

} // namespace dualres
