use super::{int, GeomError, Point, Rational};

/// `x -> matrix * x + translation`, exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    matrix: Vec<Vec<Rational>>,
    translation: Vec<Rational>,
}

impl AffineMap {
    pub fn new(matrix: Vec<Vec<Rational>>, translation: Vec<Rational>) -> Result<Self, GeomError> {
        let d = translation.len();
        if matrix.len() != d {
            return Err(GeomError::DimensionMismatch {
                expected: d,
                found: matrix.len(),
            });
        }
        if let Some(row) = matrix.iter().find(|r| r.len() != d) {
            return Err(GeomError::DimensionMismatch {
                expected: d,
                found: row.len(),
            });
        }
        Ok(AffineMap { matrix, translation })
    }

    pub fn identity(dim: usize) -> Self {
        let matrix = (0..dim)
            .map(|i| (0..dim).map(|j| int((i == j) as i64)).collect())
            .collect();
        AffineMap {
            matrix,
            translation: vec![int(0); dim],
        }
    }

    pub fn translation(v: Vec<Rational>) -> Self {
        let mut m = Self::identity(v.len());
        m.translation = v;
        m
    }

    pub fn linear(matrix: Vec<Vec<Rational>>) -> Result<Self, GeomError> {
        let d = matrix.len();
        Self::new(matrix, vec![int(0); d])
    }

    /// The shear `x_i += coefficient * x_source`.
    pub fn shear(dim: usize, target: usize, source: usize, coefficient: Rational) -> Self {
        let mut m = Self::identity(dim);
        m.matrix[target][source] += coefficient;
        m
    }

    pub fn dim(&self) -> usize {
        self.translation.len()
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.matrix
    }

    pub fn translation_part(&self) -> &[Rational] {
        &self.translation
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim())
    }

    pub fn apply(&self, p: &Point) -> Result<Point, GeomError> {
        p.check_dim(self.dim())?;
        Ok(self.apply_unchecked(p))
    }

    pub(crate) fn apply_unchecked(&self, p: &Point) -> Point {
        Point::new(
            self.matrix
                .iter()
                .zip(&self.translation)
                .map(|(row, t)| {
                    let mut acc = t.clone();
                    for (a, x) in row.iter().zip(p.coords()) {
                        if *a != 0u32 {
                            acc += a * x;
                        }
                    }
                    acc
                })
                .collect(),
        )
    }

    /// `self ∘ inner`: first `inner`, then `self`.
    pub fn compose(&self, inner: &AffineMap) -> Result<AffineMap, GeomError> {
        if self.dim() != inner.dim() {
            return Err(GeomError::DimensionMismatch {
                expected: self.dim(),
                found: inner.dim(),
            });
        }
        let d = self.dim();
        let matrix = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| (0..d).map(|k| &self.matrix[i][k] * &inner.matrix[k][j]).sum())
                    .collect()
            })
            .collect();
        let translation = (0..d)
            .map(|i| {
                let mut acc = self.translation[i].clone();
                for k in 0..d {
                    acc += &self.matrix[i][k] * &inner.translation[k];
                }
                acc
            })
            .collect();
        Ok(AffineMap { matrix, translation })
    }

    pub fn determinant(&self) -> Rational {
        let d = self.dim();
        let mut m = self.matrix.clone();
        let mut det = int(1);
        for c in 0..d {
            let Some(p) = (c..d).find(|&r| m[r][c] != 0u32) else {
                return int(0);
            };
            if p != c {
                m.swap(p, c);
                det = -det;
            }
            let pivot = m[c][c].clone();
            det *= &pivot;
            for r in c + 1..d {
                if m[r][c] != 0u32 {
                    let f = &m[r][c] / &pivot;
                    for k in c..d {
                        let s = &f * &m[c][k];
                        m[r][k] -= s;
                    }
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<AffineMap, GeomError> {
        let d = self.dim();
        // Gauss-Jordan on [M | I]
        let mut a: Vec<Vec<Rational>> = self
            .matrix
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut r = row.clone();
                r.extend((0..d).map(|j| int((i == j) as i64)));
                r
            })
            .collect();
        for c in 0..d {
            let p = (c..d).find(|&r| a[r][c] != 0u32).ok_or(GeomError::Singular)?;
            a.swap(p, c);
            let pivot = a[c][c].clone();
            for k in 0..2 * d {
                a[c][k] /= &pivot;
            }
            for r in 0..d {
                if r != c && a[r][c] != 0u32 {
                    let f = a[r][c].clone();
                    for k in 0..2 * d {
                        let s = &f * &a[c][k];
                        a[r][k] -= s;
                    }
                }
            }
        }
        let inv: Vec<Vec<Rational>> = a.into_iter().map(|r| r[d..].to_vec()).collect();
        let translation = (0..d)
            .map(|i| -(0..d).map(|k| &inv[i][k] * &self.translation[k]).sum::<Rational>())
            .collect();
        Ok(AffineMap {
            matrix: inv,
            translation,
        })
    }
}
