#include "osculant/combinat.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace osculant::combinat {

namespace {

using u128 = unsigned __int128;

constexpr i128 kI64Max = 0x7FFFFFFFFFFFFFFFLL;

i128 checked_mul(i128 a, i128 b) {
  i128 out;
  if (__builtin_mul_overflow(a, b, &out))
    throw std::range_error("combinat: 128-bit overflow in binomial product");
  return out;
}

// C(m, k) by the usual product formula; every intermediate division is exact.
i128 binom_wide(long long m, long long k) {
  if (k < 0 || m < 0 || k > m) return 0;
  k = std::min(k, m - k);
  i128 c = 1;
  for (long long i = 1; i <= k; ++i) {
    c = checked_mul(c, m - k + i);
    c /= i;
  }
  return c;
}

std::string fmt_nd(int n, int d) {
  return "n=" + std::to_string(n) + ",d=" + std::to_string(d);
}

// Known printed values from the closed-form inequality write-ups; when the
// exact recomputation disagrees, the verdict carries a discrepancy note.
struct PrintedValue {
  std::string label;
  i128 printed;
  i128 exact;
};

void append_note(std::string& note, const std::string& more) {
  if (!note.empty()) note += "; ";
  note += more;
}

void check_printed(std::string& note, const std::string& label, i128 printed, i128 exact) {
  if (printed != exact) {
    append_note(note, "paper-discrepancy: " + label + " printed as " + i128_to_string(printed) +
                          ", exact value is " + i128_to_string(exact));
  }
}

}  // namespace

std::string i128_to_string(i128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  u128 x = neg ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v);
  std::string s;
  while (x) {
    s.push_back(static_cast<char>('0' + static_cast<int>(x % 10)));
    x /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

i128 dim_forms_wide(int n, int d) {
  if (n < 0 || d < 0) throw std::range_error("dim_forms: negative argument");
  return binom_wide(static_cast<long long>(n) + d, n);
}

std::uint64_t dim_forms(int n, int d) {
  i128 v = dim_forms_wide(n, d);
  if (v > kI64Max)
    throw std::range_error("dim_forms(" + std::to_string(n) + "," + std::to_string(d) +
                           ") exceeds the 64-bit range");
  return static_cast<std::uint64_t>(v);
}

SplitSR split_sr(int n, int d) {
  if (n < 1) throw std::range_error("split_sr: need n >= 1");
  i128 c = dim_forms_wide(n, d);
  i128 m = 2 * static_cast<i128>(n) + 1;
  return SplitSR{c / m, c % m};
}

RemainderShape decompose_remainder(i128 r, i128 fat_degree, int n) {
  if (r < 0 || fat_degree <= 0 || n < 1)
    throw std::range_error("decompose_remainder: bad arguments");
  RemainderShape sh;
  sh.delta = r > n ? 1 : 0;
  i128 residual = r - sh.delta * fat_degree;
  if (residual < 0 || residual > n)
    throw std::range_error("decompose_remainder: residual " + i128_to_string(residual) +
                           " outside [0, n] for r=" + i128_to_string(r) +
                           ", fat_degree=" + i128_to_string(fat_degree) + ", n=" + std::to_string(n));
  sh.h = static_cast<int>(residual / 2);
  sh.eps = static_cast<int>(residual % 2);
  return sh;
}

RemainderShape decompose_remainder_n4(i128 r) {
  if (r < 0 || r > 6) throw std::range_error("decompose_remainder_n4: r outside [0, 6]");
  return RemainderShape{0, static_cast<int>(r / 2), static_cast<int>(r % 2)};
}

i128 t_quantity(int n, int d) {
  if (n < 3 || d < 2) throw std::range_error("t_quantity: need n >= 3, d >= 2");
  SplitSR cur = split_sr(n, d);
  SplitSR below = split_sr(n - 1, d);
  RemainderShape sh = (n == 4) ? decompose_remainder_n4(below.r)
                               : decompose_remainder(below.r, n, n);
  return cur.s - below.s - sh.h - sh.eps - sh.delta;
}

AppendixFamily appendix_family_from_string(const std::string& s) {
  std::string t;
  for (char c : s) t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (t == "a1") return AppendixFamily::A1;
  if (t == "a2") return AppendixFamily::A2;
  if (t == "a3") return AppendixFamily::A3;
  if (t == "a4") return AppendixFamily::A4;
  if (t == "mod7") return AppendixFamily::Mod7;
  throw std::domain_error("unknown appendix family: " + s);
}

std::string appendix_family_name(AppendixFamily f) {
  switch (f) {
    case AppendixFamily::A1: return "A1";
    case AppendixFamily::A2: return "A2";
    case AppendixFamily::A3: return "A3";
    case AppendixFamily::A4: return "A4";
    case AppendixFamily::Mod7: return "MOD7";
  }
  return "?";
}

namespace {

std::vector<InequalityVerdict> verify_a1(int n_max, int d_max) {
  std::vector<InequalityVerdict> out;
  for (int n = 4; n <= n_max; ++n) {
    for (int d = 5; d <= d_max; ++d) {
      InequalityVerdict v;
      v.which = "A1";
      v.instance = fmt_nd(n, d);
      v.hypothesis_met = (d >= 6) || (d == 5 && n >= 5);
      v.comparison = "lhs >= rhs";
      v.lhs = t_quantity(n, d) - 1;
      v.rhs = split_sr(n, d - 2).s;
      v.holds = v.lhs >= v.rhs;
      if (n == 5 && d == 5) {
        // The write-up computes s_{5,5} from a wrong numerator.
        check_printed(v.note, "C(10,5)", 272, dim_forms_wide(5, 5));
        check_printed(v.note, "s_{5,5}", 24, split_sr(5, 5).s);
        check_printed(v.note, "s_{4,5}", 14, split_sr(4, 5).s);
        check_printed(v.note, "r_{4,5}", 0, split_sr(4, 5).r);
        check_printed(v.note, "s_{5,3}", 5, split_sr(5, 3).s);
      }
      out.push_back(std::move(v));
    }
  }
  return out;
}

std::vector<InequalityVerdict> verify_a2(int n_max) {
  // Printed rows divide by 15 even where 2n+1 is 17, 19, 21, 23.
  static const std::map<int, i128> printed_s = {{7, 22}, {8, 33}, {9, 47}, {10, 66}, {11, 91}};
  static const std::map<int, i128> printed_r = {{7, 0}, {8, 0}, {9, 10}, {10, 11}};
  std::vector<InequalityVerdict> out;
  for (int n = 5; n <= n_max; ++n) {
    InequalityVerdict v;
    v.which = "A2";
    v.instance = "n=" + std::to_string(n) + ",d=4";
    v.hypothesis_met = n >= 7;
    v.comparison = "2*lhs > rhs";
    v.lhs = t_quantity(n, 4);
    v.rhs = n;
    v.holds = 2 * v.lhs > v.rhs;
    if (auto it = printed_s.find(n); it != printed_s.end())
      check_printed(v.note, "s_{" + std::to_string(n) + ",4}", it->second, split_sr(n, 4).s);
    if (auto it = printed_r.find(n - 1); it != printed_r.end())
      check_printed(v.note, "r_{" + std::to_string(n - 1) + ",4}", it->second, split_sr(n - 1, 4).r);
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<InequalityVerdict> verify_a3(int n_max, int d_max) {
  std::vector<InequalityVerdict> out;
  for (int n = 4; n <= n_max; ++n) {
    for (int d = 4; d <= d_max; ++d) {
      InequalityVerdict v;
      v.which = "A3";
      v.instance = fmt_nd(n, d);
      v.hypothesis_met = (d >= 5 && n >= 4) || (d == 4 && n >= 7);
      v.comparison = "lhs <= rhs";
      v.lhs = 4 * static_cast<i128>(n) - 1;
      v.rhs = 2 * split_sr(n - 1, d).s;
      v.holds = v.lhs <= v.rhs;
      if (n == 7 && d == 4) check_printed(v.note, "s_{6,4}", 16, split_sr(6, 4).s);
      if (n == 4 && d == 5) check_printed(v.note, "s_{3,5}", 8, split_sr(3, 5).s);
      out.push_back(std::move(v));
    }
  }
  return out;
}

std::vector<InequalityVerdict> verify_a4(int d_max) {
  std::vector<InequalityVerdict> out;
  for (int d = 8; d <= d_max; ++d) {
    i128 s4d = split_sr(4, d).s, s3d = split_sr(3, d).s, s3d1 = split_sr(3, d - 1).s;
    {
      InequalityVerdict v;
      v.which = "A4";
      v.instance = "A4i d=" + std::to_string(d);
      v.hypothesis_met = d >= 10;
      v.comparison = "lhs >= rhs";
      v.lhs = s4d - s3d - s3d1 - 2;
      v.rhs = split_sr(4, d - 3).s;
      v.holds = v.lhs >= v.rhs;
      out.push_back(std::move(v));
    }
    {
      InequalityVerdict v;
      v.which = "A4";
      v.instance = "A4ii d=" + std::to_string(d);
      v.hypothesis_met = d >= 10;
      v.comparison = "lhs <= rhs";
      v.lhs = s4d - s3d - s3d1 + 1;
      v.rhs = split_sr(4, d - 2).s;
      v.holds = v.lhs <= v.rhs;
      out.push_back(std::move(v));
    }
  }
  return out;
}

std::vector<InequalityVerdict> verify_mod7() {
  std::vector<InequalityVerdict> out;
  for (int k = 0; k < 7; ++k) {
    InequalityVerdict v;
    v.which = "MOD7";
    v.instance = "d=" + std::to_string(k) + " (mod 7)";
    v.hypothesis_met = true;
    v.comparison = "lhs != rhs";
    // 6*r_{3,d} = (d+3)(d+2)(d+1) mod 7; residue 2 would force r_{3,d} = 5.
    v.lhs = static_cast<i128>((k + 3) * (k + 2) * (k + 1) % 7);
    v.rhs = 2;
    v.holds = v.lhs != v.rhs;
    v.note = "(d+3)(d+2)(d+1) mod 7";
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

std::vector<InequalityVerdict> verify_appendix(AppendixFamily f, int n_max, int d_max) {
  switch (f) {
    case AppendixFamily::A1: return verify_a1(n_max, d_max);
    case AppendixFamily::A2: return verify_a2(n_max);
    case AppendixFamily::A3: return verify_a3(n_max, d_max);
    case AppendixFamily::A4: return verify_a4(d_max);
    case AppendixFamily::Mod7: return verify_mod7();
  }
  throw std::domain_error("verify_appendix: bad family");
}

Step7Facts r3d_step7_facts(long long d) {
  if (d < 1) throw std::range_error("r3d_step7_facts: need d >= 1");
  Step7Facts f;
  f.r3d = static_cast<int>(split_sr(3, static_cast<int>(d)).r);
  f.r3d_minus_1 = static_cast<int>(split_sr(3, static_cast<int>(d - 1)).r);
  f.d_mod_7 = static_cast<int>(d % 7);
  return f;
}

}  // namespace osculant::combinat
