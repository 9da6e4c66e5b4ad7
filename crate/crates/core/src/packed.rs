//! Bit-sliced GF(9) vectors.
//!
//! Each block of 64 coordinates is a [`Lane`] holding two GF(3) planes (the
//! `1` and `w` coefficients). A GF(3) plane is a pair of disjoint masks: bit
//! set in `p` means the coefficient is 1, bit set in `m` means it is 2.

use crate::field::{F9Vector, F3, F9};

#[derive(Clone, Copy, Default, PartialEq, Eq, Debug)]
pub struct Lane {
    pub p0: u64,
    pub m0: u64,
    pub p1: u64,
    pub m1: u64,
}

#[inline(always)]
fn add3(xp: u64, xm: u64, yp: u64, ym: u64) -> (u64, u64) {
    let t = (xp | ym) ^ (xm | yp);
    ((xm | ym) ^ t, (xp | yp) ^ t)
}

impl std::ops::Add for Lane {
    type Output = Lane;

    #[inline(always)]
    fn add(self, o: Lane) -> Lane {
        let (p0, m0) = add3(self.p0, self.m0, o.p0, o.m0);
        let (p1, m1) = add3(self.p1, self.m1, o.p1, o.m1);
        Lane { p0, m0, p1, m1 }
    }
}

impl std::ops::Neg for Lane {
    type Output = Lane;

    #[inline(always)]
    fn neg(self) -> Lane {
        Lane { p0: self.m0, m0: self.p0, p1: self.m1, m1: self.p1 }
    }
}

impl std::ops::Sub for Lane {
    type Output = Lane;

    #[inline(always)]
    fn sub(self, o: Lane) -> Lane {
        self + -o
    }
}

impl Lane {
    #[inline(always)]
    pub fn scale(self, a: F3) -> Lane {
        match a.value() {
            0 => Lane::default(),
            1 => self,
            _ => -self,
        }
    }

    #[inline(always)]
    pub fn support(self) -> u64 {
        self.p0 | self.m0 | self.p1 | self.m1
    }

    #[inline(always)]
    pub fn f3_hamming(self) -> u32 {
        (self.p0 | self.m0).count_ones() + (self.p1 | self.m1).count_ones()
    }
}

/// Dense bit-sliced vector over GF(9).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PackedVec {
    len: usize,
    lanes: Vec<Lane>,
}

impl PackedVec {
    pub fn zeros(len: usize) -> Self {
        PackedVec { len, lanes: vec![Lane::default(); len.div_ceil(64).max(1)] }
    }

    pub fn from_f9(v: &F9Vector) -> Self {
        let mut out = PackedVec::zeros(v.len());
        for (i, &x) in v.entries().iter().enumerate() {
            out.set(i, x);
        }
        out
    }

    pub fn to_f9(&self) -> F9Vector {
        F9Vector::new((0..self.len).map(|i| self.get(i)).collect())
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn lanes(&self) -> &[Lane] {
        &self.lanes
    }

    pub fn lanes_mut(&mut self) -> &mut [Lane] {
        &mut self.lanes
    }

    pub fn get(&self, i: usize) -> F9 {
        debug_assert!(i < self.len);
        let lane = &self.lanes[i / 64];
        let bit = 1u64 << (i % 64);
        let coef = |p: u64, m: u64| {
            if p & bit != 0 {
                F3::ONE
            } else if m & bit != 0 {
                F3::TWO
            } else {
                F3::ZERO
            }
        };
        F9::new(coef(lane.p0, lane.m0), coef(lane.p1, lane.m1))
    }

    pub fn set(&mut self, i: usize, x: F9) {
        debug_assert!(i < self.len);
        let lane = &mut self.lanes[i / 64];
        let bit = 1u64 << (i % 64);
        let put = |p: &mut u64, m: &mut u64, c: F3| {
            *p &= !bit;
            *m &= !bit;
            match c.value() {
                1 => *p |= bit,
                2 => *m |= bit,
                _ => {}
            }
        };
        put(&mut lane.p0, &mut lane.m0, x.c0);
        put(&mut lane.p1, &mut lane.m1, x.c1);
    }

    /// GF(3) coefficient at interleaved column `2*i + plane`.
    pub fn column(&self, col: usize) -> F3 {
        let x = self.get(col / 2);
        if col.is_multiple_of(2) {
            x.c0
        } else {
            x.c1
        }
    }

    pub fn is_zero(&self) -> bool {
        self.lanes.iter().all(|l| l.support() == 0)
    }

    pub fn add_assign(&mut self, o: &PackedVec) {
        for (a, b) in self.lanes.iter_mut().zip(&o.lanes) {
            *a = *a + *b;
        }
    }

    pub fn sub_assign(&mut self, o: &PackedVec) {
        for (a, b) in self.lanes.iter_mut().zip(&o.lanes) {
            *a = *a - *b;
        }
    }

    pub fn add_scaled(&mut self, o: &PackedVec, a: F3) {
        match a.value() {
            0 => {}
            1 => self.add_assign(o),
            _ => self.sub_assign(o),
        }
    }

    pub fn scaled(&self, a: F3) -> PackedVec {
        PackedVec { len: self.len, lanes: self.lanes.iter().map(|l| l.scale(a)).collect() }
    }

    /// Number of nonzero GF(9) coordinates.
    pub fn weight(&self) -> usize {
        self.lanes.iter().map(|l| l.support().count_ones() as usize).sum()
    }

    /// Number of nonzero GF(3) coefficients in the two-plane expansion.
    pub fn f3_hamming(&self) -> usize {
        self.lanes.iter().map(|l| l.f3_hamming() as usize).sum()
    }

    /// Symplectic form `sum(b_i c_i - a_i d_i)` for `x_i = a_i + b_i w`,
    /// `y_i = c_i + d_i w`; equal to the trace-Hermitian form.
    pub fn symplectic(&self, o: &PackedVec) -> F3 {
        let dot = |xp: u64, xm: u64, yp: u64, ym: u64| -> i64 {
            let ones = (xp & yp) | (xm & ym);
            let twos = (xp & ym) | (xm & yp);
            ones.count_ones() as i64 - twos.count_ones() as i64
        };
        let total: i64 = self
            .lanes
            .iter()
            .zip(&o.lanes)
            .map(|(x, y)| dot(x.p1, x.m1, y.p0, y.m0) - dot(x.p0, x.m0, y.p1, y.m1))
            .sum();
        F3::from_i64(total)
    }
}
