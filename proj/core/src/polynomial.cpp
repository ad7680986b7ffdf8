#include "dualres/polynomial.hpp"

#include "dualres/errors.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

namespace dualres {

Monomial::Monomial(std::vector<Factor> factors) {
    std::sort(factors.begin(), factors.end());
    for (auto& [name, e] : factors) {
        if (e == 0) continue;
        if (!factors_.empty() && factors_.back().first == name) {
            factors_.back().second += e;
        } else {
            factors_.emplace_back(std::move(name), e);
        }
    }
}

Monomial Monomial::variable(std::string name, unsigned exponent) {
    return Monomial({{std::move(name), exponent}});
}

unsigned Monomial::exponent(const std::string& var) const {
    auto it = std::lower_bound(factors_.begin(), factors_.end(), var,
                               [](const Factor& f, const std::string& v) { return f.first < v; });
    return (it != factors_.end() && it->first == var) ? it->second : 0;
}

unsigned Monomial::total_degree() const {
    unsigned d = 0;
    for (const auto& f : factors_) d += f.second;
    return d;
}

Monomial Monomial::operator*(const Monomial& rhs) const {
    Monomial out;
    out.factors_.reserve(factors_.size() + rhs.factors_.size());
    auto a = factors_.begin();
    auto b = rhs.factors_.begin();
    while (a != factors_.end() || b != rhs.factors_.end()) {
        if (b == rhs.factors_.end() || (a != factors_.end() && a->first < b->first)) {
            out.factors_.push_back(*a++);
        } else if (a == factors_.end() || b->first < a->first) {
            out.factors_.push_back(*b++);
        } else {
            out.factors_.emplace_back(a->first, a->second + b->second);
            ++a;
            ++b;
        }
    }
    return out;
}

Monomial Monomial::reduced(const std::string& var, unsigned k) const {
    Monomial out;
    for (const auto& f : factors_) {
        if (f.first != var) {
            out.factors_.push_back(f);
        } else if (f.second > k) {
            out.factors_.emplace_back(f.first, f.second - k);
        }
    }
    return out;
}

std::string Monomial::to_string() const {
    if (factors_.empty()) return "1";
    std::string out;
    for (const auto& [name, e] : factors_) {
        if (!out.empty()) out += '*';
        out += name;
        if (e > 1) out += '^' + std::to_string(e);
    }
    return out;
}

Polynomial::Polynomial(int constant) : Polynomial(Integer(constant)) {}

Polynomial::Polynomial(Integer constant) {
    if (constant != 0) terms_.emplace(Monomial{}, std::move(constant));
}

Polynomial Polynomial::variable(const std::string& name) {
    return term(1, Monomial::variable(name));
}

Polynomial Polynomial::term(Integer coefficient, Monomial monomial) {
    Polynomial p;
    if (coefficient != 0) p.terms_.emplace(std::move(monomial), std::move(coefficient));
    return p;
}

void Polynomial::add_term(const Monomial& m, const Integer& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

std::set<std::string> Polynomial::variables() const {
    std::set<std::string> out;
    for (const auto& [m, _] : terms_) {
        for (const auto& f : m.factors()) out.insert(f.first);
    }
    return out;
}

unsigned Polynomial::degree_in(const std::string& var) const {
    unsigned d = 0;
    for (const auto& [m, _] : terms_) d = std::max(d, m.exponent(var));
    return d;
}

unsigned Polynomial::divisibility_in(const std::string& var) const {
    if (terms_.empty()) return 0;
    unsigned d = std::numeric_limits<unsigned>::max();
    for (const auto& [m, _] : terms_) d = std::min(d, m.exponent(var));
    return d;
}

unsigned Polynomial::min_total_degree() const {
    if (terms_.empty()) return 0;
    unsigned d = std::numeric_limits<unsigned>::max();
    for (const auto& [m, _] : terms_) d = std::min(d, m.total_degree());
    return d;
}

unsigned Polynomial::total_degree() const {
    unsigned d = 0;
    for (const auto& [m, _] : terms_) d = std::max(d, m.total_degree());
    return d;
}

Polynomial Polynomial::divided_by_power(const std::string& var, unsigned k) const {
    Polynomial out;
    for (const auto& [m, c] : terms_) {
        if (m.exponent(var) < k) {
            throw PreconditionError("term " + m.to_string() + " is not divisible by " + var + "^" + std::to_string(k));
        }
        out.terms_.emplace(m.reduced(var, k), c);
    }
    return out;
}

Polynomial Polynomial::substitute(const Substitution& sub) const {
    // Powers of images are reused across terms.
    std::map<std::pair<std::string, unsigned>, Polynomial> power_cache;
    auto power_of = [&](const std::string& var, unsigned e) -> const Polynomial& {
        auto key = std::make_pair(var, e);
        auto it = power_cache.find(key);
        if (it != power_cache.end()) return it->second;
        const Polynomial* image = sub.find(var);
        Polynomial value = image ? image->pow(e) : Polynomial::term(1, Monomial::variable(var, e));
        return power_cache.emplace(std::move(key), std::move(value)).first->second;
    };

    Polynomial out;
    for (const auto& [m, c] : terms_) {
        Polynomial prod(c);
        for (const auto& [var, e] : m.factors()) prod *= power_of(var, e);
        out += prod;
    }
    return out;
}

Polynomial Polynomial::evaluate(const std::string& var, const Integer& value) const {
    Substitution s;
    s.set(var, Polynomial(value));
    return substitute(s);
}

Polynomial Polynomial::operator-() const {
    Polynomial out = *this;
    for (auto& [_, c] : out.terms_) c = -c;
    return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
    for (const auto& [m, c] : rhs.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
    for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial out;
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
    }
    return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& rhs) {
    *this = *this * rhs;
    return *this;
}

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial result(1);
    Polynomial base = *this;
    while (e > 0) {
        if (e & 1u) result *= base;
        e >>= 1u;
        if (e > 0) base *= base;
    }
    return result;
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // Highest total degree first reads more naturally.
    std::vector<const TermMap::value_type*> order;
    for (const auto& t : terms_) order.push_back(&t);
    std::stable_sort(order.begin(), order.end(), [](auto* a, auto* b) {
        return a->first.total_degree() > b->first.total_degree();
    });
    for (const auto* t : order) {
        const Integer& c = t->second;
        const bool neg = c < 0;
        const Integer mag = neg ? Integer(-c) : c;
        if (first) {
            if (neg) os << '-';
        } else {
            os << (neg ? " - " : " + ");
        }
        if (t->first.is_one()) {
            os << mag;
        } else {
            if (mag != 1) os << mag << '*';
            os << t->first.to_string();
        }
        first = false;
    }
    return os.str();
}

Substitution& Substitution::set(const std::string& var, Polynomial image) {
    if (image.variables().contains(var)) {
        throw PreconditionError("substitution for '" + var + "' refers to itself");
    }
    images_.insert_or_assign(var, std::move(image));
    return *this;
}

const Polynomial* Substitution::find(const std::string& var) const {
    auto it = images_.find(var);
    return it == images_.end() ? nullptr : &it->second;
}

Polynomial determinant(const std::vector<std::vector<Polynomial>>& matrix) {
    const std::size_t n = matrix.size();
    for (const auto& row : matrix) {
        if (row.size() != n) throw PreconditionError("determinant: matrix is not square");
    }
    if (n == 0) return Polynomial(1);

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Polynomial det;
    do {
        std::size_t inversions = 0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                if (perm[i] > perm[j]) ++inversions;
            }
        }
        Polynomial prod(inversions % 2 == 0 ? 1 : -1);
        for (std::size_t i = 0; i < n && !prod.is_zero(); ++i) prod *= matrix[i][perm[i]];
        det += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

} // namespace dualres
