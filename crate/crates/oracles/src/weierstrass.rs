//! Invariants of a general Weierstrass cubic, evaluated at integer points.

/// Coefficients `a1, a2, a3, a4, a6`.
#[derive(Clone, Copy, Debug)]
pub struct Cubic {
    pub a1: i128,
    pub a2: i128,
    pub a3: i128,
    pub a4: i128,
    pub a6: i128,
}

impl Cubic {
    pub fn b2(&self) -> i128 {
        self.a1 * self.a1 + 4 * self.a2
    }

    pub fn b4(&self) -> i128 {
        2 * self.a4 + self.a1 * self.a3
    }

    pub fn b6(&self) -> i128 {
        self.a3 * self.a3 + 4 * self.a6
    }

    pub fn b8(&self) -> i128 {
        let Cubic { a1, a2, a3, a4, a6 } = *self;
        a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    }

    pub fn c4(&self) -> i128 {
        self.b2() * self.b2() - 24 * self.b4()
    }

    pub fn c6(&self) -> i128 {
        let b2 = self.b2();
        -b2 * b2 * b2 + 36 * b2 * self.b4() - 216 * self.b6()
    }

    pub fn discriminant(&self) -> i128 {
        let (b2, b4, b6, b8) = (self.b2(), self.b4(), self.b6(), self.b8());
        -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    }
}

/// The level-three curve `y^2 + a1 xy + a3 y = x^3`.
pub fn level_three(a1: i128, a3: i128) -> Cubic {
    Cubic { a1, a2: 0, a3, a4: 0, a6: 0 }
}
