use super::BigComplex;

/// Integer 2×2 matrix [a, b; c, d], acting on the upper half plane by
/// z ↦ (az + b)/(cz + d).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Mat2 {
    pub const I: Mat2 = Mat2 { a: 1, b: 0, c: 0, d: 1 };
    pub const S: Mat2 = Mat2 { a: 0, b: -1, c: 1, d: 0 };
    pub const T: Mat2 = Mat2 { a: 1, b: 1, c: 0, d: 1 };

    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn t_pow(n: i64) -> Self {
        Mat2::new(1, n, 0, 1)
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2 {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    /// Inverse of a determinant-one matrix.
    pub fn inverse(&self) -> Mat2 {
        debug_assert_eq!(self.det(), 1);
        Mat2 { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    /// Representative of ±M with c > 0, or c = 0 and d > 0.
    pub fn normalised(&self) -> Mat2 {
        if self.c < 0 || (self.c == 0 && self.d < 0) {
            Mat2 { a: -self.a, b: -self.b, c: -self.c, d: -self.d }
        } else {
            *self
        }
    }

    pub fn is_normalised(&self) -> bool {
        self.c > 0 || (self.c == 0 && self.d > 0)
    }

    pub fn act(&self, z: &BigComplex) -> BigComplex {
        let num = z.mul_i64(self.a).add(&BigComplex::from_i64(self.b, 0, z.prec()));
        let den = z.mul_i64(self.c).add(&BigComplex::from_i64(self.d, 0, z.prec()));
        num.div(&den)
    }
}

impl std::fmt::Display for Mat2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}, {}; {}, {}]", self.a, self.b, self.c, self.d)
    }
}
