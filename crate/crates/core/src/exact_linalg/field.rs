use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Coefficient field: a prime field `F_p` or the rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Prime(u32),
    Rational,
}

impl Field {
    pub const F2: Field = Field::Prime(2);
    pub const F3: Field = Field::Prime(3);
    pub const F5: Field = Field::Prime(5);
    pub const Q: Field = Field::Rational;

    /// Checked constructor for `F_p`.
    pub fn prime(p: u64) -> Result<Field> {
        if p < 2 || p >= 1 << 31 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Prime(p as u32))
    }

    pub fn zero(self) -> Elem {
        self.from_i64(0)
    }

    pub fn one(self) -> Elem {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Elem {
        match self {
            Field::Prime(p) => Elem::Fp {
                value: v.rem_euclid(p as i64) as u32,
                modulus: p,
            },
            Field::Rational => Elem::Q(BigRational::from_integer(BigInt::from(v))),
        }
    }

    /// Embeds a rational; fails over `F_p` when the denominator vanishes mod p.
    pub fn from_rational(self, r: &BigRational) -> Result<Elem> {
        match self {
            Field::Rational => Ok(Elem::Q(r.clone())),
            Field::Prime(p) => {
                let p_big = BigInt::from(p);
                let num = residue(r.numer(), &p_big);
                let den = residue(r.denom(), &p_big);
                if den == 0 {
                    return Err(Error::BadScalar(r.to_string()));
                }
                let num = self.from_i64(num as i64);
                let den = self.from_i64(den as i64);
                Ok(num * den.inv().expect("nonzero residue"))
            }
        }
    }

    /// Parses `"3"`, `"-1/2"` style scalars into this field.
    pub fn parse_elem(self, s: &str) -> Result<Elem> {
        let r = parse_rational(s)?;
        self.from_rational(&r)
    }

    /// Order of the multiplicative group, if finite.
    pub fn unit_count(self) -> Option<u64> {
        match self {
            Field::Prime(p) => Some(p as u64 - 1),
            Field::Rational => None,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(p) => write!(f, "F{p}"),
            Field::Rational => write!(f, "Q"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        let t = s.trim();
        if t == "Q" {
            return Ok(Field::Rational);
        }
        match t.strip_prefix('F').map(str::parse::<u64>) {
            Some(Ok(p)) => Field::prime(p),
            _ => Err(Error::UnknownField(s.to_string())),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn residue(v: &BigInt, p: &BigInt) -> u64 {
    let r = ((v % p) + p) % p;
    r.to_u64().expect("residue fits in u64")
}

/// Parses an integer or `a/b` string into a reduced rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let bad = || Error::BadScalar(s.to_string());
    match t.split_once('/') {
        None => Ok(BigRational::from_integer(t.parse::<BigInt>().map_err(|_| bad())?)),
        Some((n, d)) => {
            let n = n.trim().parse::<BigInt>().map_err(|_| bad())?;
            let d = d.trim().parse::<BigInt>().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
    }
}

/// Renders a rational as an integer when possible, `a/b` otherwise.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Element of a [`Field`], always kept in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Elem {
    Fp { value: u32, modulus: u32 },
    Q(BigRational),
}

impl Elem {
    pub fn field(&self) -> Field {
        match self {
            Elem::Fp { modulus, .. } => Field::Prime(*modulus),
            Elem::Q(_) => Field::Rational,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Elem::Fp { value, .. } => *value == 0,
            Elem::Q(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Elem::Fp { value, .. } => *value == 1,
            Elem::Q(r) => r.is_one(),
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Elem> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Elem::Fp { value, modulus } => Elem::Fp {
                value: pow_mod(*value as u64, *modulus as u64 - 2, *modulus as u64) as u32,
                modulus: *modulus,
            },
            Elem::Q(r) => Elem::Q(r.recip()),
        })
    }

    /// Rational value of the element; residues map to their representative in `[0, p)`.
    pub fn to_rational(&self) -> BigRational {
        match self {
            Elem::Fp { value, .. } => BigRational::from_integer(BigInt::from(*value)),
            Elem::Q(r) => r.clone(),
        }
    }

    /// Serialized form: integer residue for `F_p`, `a/b` string for `Q`.
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Elem::Fp { value, .. } => serde_json::Value::from(*value),
            Elem::Q(r) => serde_json::Value::from(format_rational(r)),
        }
    }

    fn check_same(&self, other: &Elem) {
        assert_eq!(
            self.field(),
            other.field(),
            "arithmetic across fields {} and {}",
            self.field(),
            other.field()
        );
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Fp { value, .. } => write!(f, "{value}"),
            Elem::Q(r) => {
                if r.is_negative() || !r.is_integer() {
                    write!(f, "{}", format_rational(r))
                } else {
                    write!(f, "{}", r.numer())
                }
            }
        }
    }
}

impl Add for Elem {
    type Output = Elem;
    fn add(self, rhs: Elem) -> Elem {
        &self + &rhs
    }
}

impl Add for &Elem {
    type Output = Elem;
    fn add(self, rhs: &Elem) -> Elem {
        self.check_same(rhs);
        match (self, rhs) {
            (Elem::Fp { value: a, modulus }, Elem::Fp { value: b, .. }) => Elem::Fp {
                value: ((*a as u64 + *b as u64) % *modulus as u64) as u32,
                modulus: *modulus,
            },
            (Elem::Q(a), Elem::Q(b)) => Elem::Q(a + b),
            _ => unreachable!(),
        }
    }
}

impl Neg for Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        -&self
    }
}

impl Neg for &Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        match self {
            Elem::Fp { value, modulus } => Elem::Fp {
                value: (*modulus - *value) % *modulus,
                modulus: *modulus,
            },
            Elem::Q(r) => Elem::Q(-r),
        }
    }
}

impl Sub for Elem {
    type Output = Elem;
    fn sub(self, rhs: Elem) -> Elem {
        &self - &rhs
    }
}

impl Sub for &Elem {
    type Output = Elem;
    fn sub(self, rhs: &Elem) -> Elem {
        self + &(-rhs)
    }
}

impl Mul for Elem {
    type Output = Elem;
    fn mul(self, rhs: Elem) -> Elem {
        &self * &rhs
    }
}

impl Mul for &Elem {
    type Output = Elem;
    fn mul(self, rhs: &Elem) -> Elem {
        self.check_same(rhs);
        match (self, rhs) {
            (Elem::Fp { value: a, modulus }, Elem::Fp { value: b, .. }) => Elem::Fp {
                value: ((*a as u64 * *b as u64) % *modulus as u64) as u32,
                modulus: *modulus,
            },
            (Elem::Q(a), Elem::Q(b)) => Elem::Q(a * b),
            _ => unreachable!(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fields() {
        assert_eq!("F2".parse::<Field>().unwrap(), Field::F2);
        assert_eq!("Q".parse::<Field>().unwrap(), Field::Q);
        assert_eq!("F4".parse::<Field>(), Err(Error::NotPrime(4)));
        assert!("R".parse::<Field>().is_err());
    }

    #[test]
    fn prime_arithmetic() {
        let f = Field::F5;
        let a = f.from_i64(3);
        assert_eq!(&a * &a, f.from_i64(4));
        assert_eq!(a.inv().unwrap(), f.from_i64(2));
        assert_eq!(-f.one(), f.from_i64(4));
        assert!(f.zero().inv().is_none());
    }

    #[test]
    fn rational_parsing_reduces() {
        let q = Field::Q.parse_elem("4/6").unwrap();
        assert_eq!(q.to_string(), "2/3");
        assert_eq!(Field::F5.parse_elem("1/2").unwrap(), Field::F5.from_i64(3));
        assert!(Field::F5.parse_elem("1/5").is_err());
        assert!(parse_rational("1/0").is_err());
    }
}
