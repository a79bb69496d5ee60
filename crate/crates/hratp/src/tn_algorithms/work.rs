//! In-place manipulation of a decomposition viewed as a word of elementary bidiagonals.
//!
//! Writing `E_g(x) = I + x e_{g+1} e_g^T` and `U_g(x) = E_g(x)^T`, a decomposition is the word
//! `F_{n-1} ... F_1 D G_1 ... G_{n-1}` with `F_k = E_{k-1} ... E_{n-2}` and
//! `G_k = U_{n-2} ... U_{k-1}`. Every rewrite below uses one of
//!
//! * `E_g(x) E_{g+1}(y) E_g(z) = E_{g+1}(yz/(x+z)) E_g(x+z) E_{g+1}(xy/(x+z))`
//! * `U_g(x) E_g(y) = E_g(y/t) diag_g(t, 1/t) U_g(x/t)` with `t = 1 + xy`
//! * `D E_g(y) = E_g(y d_{g+1}/d_g) D` and `U_g(x) D = D U_g(x d_{g+1}/d_g)`
//!
//! so nonnegative parameters only ever meet products, quotients and sums.
//!
//! Generators are only ever appended to the right end of the lower word (or, through the
//! transpose, the left end of the upper word): when some parameters vanish, insertion at
//! the other end can produce a valid word that is not the Neville decomposition.

use crate::bd_core::BdMatrix;
use crate::scalar::Scalar;

pub(crate) struct Work<T> {
    n: usize,
    cells: Vec<T>,
    flipped: bool,
}

impl<T: Scalar> Work<T> {
    pub(crate) fn new(bd: &BdMatrix<T>) -> Self {
        Self {
            n: bd.order(),
            cells: bd.cells().to_vec(),
            flipped: false,
        }
    }

    pub(crate) fn order(&self) -> usize {
        self.n
    }

    pub(crate) fn finish(self) -> BdMatrix<T> {
        BdMatrix::from_cells(self.n, self.cells).expect("shape preserved")
    }

    fn idx(&self, i: usize, j: usize) -> usize {
        if self.flipped {
            j * self.n + i
        } else {
            i * self.n + j
        }
    }

    pub(crate) fn cell(&self, i: usize, j: usize) -> T {
        self.cells[self.idx(i, j)].clone()
    }

    pub(crate) fn set_cell(&mut self, i: usize, j: usize, v: T) {
        let k = self.idx(i, j);
        self.cells[k] = v;
    }

    /// Swaps the roles of the lower and upper factors (the word of the transpose).
    pub(crate) fn flip(&mut self) {
        self.flipped = !self.flipped;
    }

    fn lo(&self, k: usize, g: usize) -> T {
        self.cell(g + 1, g + 1 - k)
    }

    fn set_lo(&mut self, k: usize, g: usize, v: T) {
        self.set_cell(g + 1, g + 1 - k, v);
    }

    fn up(&self, k: usize, g: usize) -> T {
        self.cell(g + 1 - k, g + 1)
    }

    fn set_up(&mut self, k: usize, g: usize, v: T) {
        self.set_cell(g + 1 - k, g + 1, v);
    }

    fn piv(&self, i: usize) -> T {
        self.cell(i, i)
    }

    fn set_piv(&mut self, i: usize, v: T) {
        self.set_cell(i, i, v);
    }

    /// `L <- L E_g(y)` on the lower word alone. Appending at this end keeps the zero
    /// pattern of the unique decomposition; prepending would not.
    pub(crate) fn lower_times_e(&mut self, g: usize, y: T) {
        let last = self.n - 2;
        let (mut k, mut g, mut y) = (1, g, y);
        loop {
            if y.is_zero() {
                return;
            }
            if g == last {
                let v = self.lo(k, g) + y;
                self.set_lo(k, g, v);
                return;
            }
            let a = self.lo(k, g);
            let b = self.lo(k, g + 1);
            let s = a.clone() + y.clone();
            self.set_lo(k, g + 1, a * b.clone() / s.clone());
            y = b * y / s.clone();
            self.set_lo(k, g, s);
            g += 1;
            k += 1;
        }
    }

    /// `C <- C E_g(y)`.
    pub(crate) fn times_lower(&mut self, g: usize, y: T) {
        if y.is_zero() {
            return;
        }
        let n = self.n;
        let mut y = y;
        // Diagonal factor trailing the travelling E_g; only entries g and g+1 differ from 1.
        let mut dg = T::one();
        let mut dg1 = T::one();
        for k in (1..n).rev() {
            for h in (k - 1)..(n - 1) {
                let x = self.up(k, h);
                if x.is_zero() {
                    continue;
                }
                if h == g {
                    let t = T::one() + x.clone() * y.clone();
                    let nx = x / t.clone() * dg1.clone() / dg.clone();
                    y = y / t.clone();
                    dg = dg * t.clone();
                    dg1 = dg1 / t;
                    self.set_up(k, h, nx);
                } else if h == g + 1 {
                    self.set_up(k, h, x / dg1.clone());
                } else if h + 1 == g {
                    self.set_up(k, h, x * dg.clone());
                }
            }
        }
        let d0 = self.piv(g);
        let d1 = self.piv(g + 1);
        let y = y * d1.clone() / d0.clone();
        self.set_piv(g, d0 * dg);
        self.set_piv(g + 1, d1 * dg1);
        self.lower_times_e(g, y);
    }

    /// `C <- C diag(delta)`.
    pub(crate) fn times_diag(&mut self, delta: &[T]) {
        let n = self.n;
        for k in 1..n {
            for h in (k - 1)..(n - 1) {
                let x = self.up(k, h);
                if !x.is_zero() {
                    self.set_up(k, h, x * delta[h + 1].clone() / delta[h].clone());
                }
            }
        }
        for (i, d) in delta.iter().enumerate() {
            let v = self.piv(i) * d.clone();
            self.set_piv(i, v);
        }
    }
}

/// Lower factor parameters of `bd` in word order: `F_{n-1}` first, each factor left to right.
pub(crate) fn lower_word<T: Scalar>(bd: &BdMatrix<T>) -> Vec<(usize, T)> {
    let n = bd.order();
    let mut out = Vec::new();
    for k in (1..n).rev() {
        for g in (k - 1)..(n - 1) {
            out.push((g, bd.get(g + 1, g + 1 - k).clone()));
        }
    }
    out
}

