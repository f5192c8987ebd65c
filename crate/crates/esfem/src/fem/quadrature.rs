//! Symmetric quadrature rules on the reference triangle.
//!
//! Points are barycentric; weights sum to one, so an integral over a flat
//! triangle `K` is `area(K) * sum_q w_q f(x_q)`.

/// A quadrature rule with a stated polynomial exactness degree.
#[derive(Clone, Debug)]
pub struct TriangleQuadrature {
    pub points: Vec<[f64; 3]>,
    pub weights: Vec<f64>,
    pub degree: usize,
}

fn perm3(a: f64, b: f64) -> Vec<[f64; 3]> {
    vec![[a, b, b], [b, a, b], [b, b, a]]
}

fn perm6(a: f64, b: f64, c: f64) -> Vec<[f64; 3]> {
    vec![
        [a, b, c],
        [a, c, b],
        [b, a, c],
        [b, c, a],
        [c, a, b],
        [c, b, a],
    ]
}

impl TriangleQuadrature {
    /// Smallest shipped rule that integrates polynomials of total degree
    /// `degree` exactly (available up to degree 10).
    pub fn with_degree(degree: usize) -> Self {
        match degree {
            0 | 1 => Self::degree1(),
            2 => Self::degree2(),
            3 | 4 => Self::degree4(),
            5 | 6 => Self::degree6(),
            _ => Self::degree10(),
        }
    }

    /// Centroid rule.
    pub fn degree1() -> Self {
        Self {
            points: vec![[1.0 / 3.0; 3]],
            weights: vec![1.0],
            degree: 1,
        }
    }

    /// Three-point edge-midpoint-class rule.
    pub fn degree2() -> Self {
        Self {
            points: perm3(2.0 / 3.0, 1.0 / 6.0),
            weights: vec![1.0 / 3.0; 3],
            degree: 2,
        }
    }

    /// Six-point rule.
    pub fn degree4() -> Self {
        let mut points = perm3(0.108103018168070, 0.445948490915965);
        points.extend(perm3(0.816847572980459, 0.091576213509771));
        let mut weights = vec![0.223381589678011; 3];
        weights.extend(vec![0.109951743655322; 3]);
        Self {
            points,
            weights,
            degree: 4,
        }
    }

    /// Twelve-point rule.
    pub fn degree6() -> Self {
        let mut points = perm3(0.873821971016996, 0.063089014491502);
        points.extend(perm3(0.501426509658179, 0.249286745170910));
        points.extend(perm6(
            0.053145049844816,
            0.310352451033785,
            0.636502499121399,
        ));
        let mut weights = vec![0.050844906370207; 3];
        weights.extend(vec![0.116786275726379; 3]);
        weights.extend(vec![0.082851075618374; 6]);
        Self {
            points,
            weights,
            degree: 6,
        }
    }

    /// Twenty-five-point rule.
    pub fn degree10() -> Self {
        let mut points = vec![[1.0 / 3.0; 3]];
        let mut weights = vec![0.090817990382754];
        points.extend(perm3(0.028844733232685, 0.485577633383657));
        weights.extend(vec![0.036725957756467; 3]);
        points.extend(perm3(0.781036849029926, 0.109481575485037));
        weights.extend(vec![0.045321059435528; 3]);
        points.extend(perm6(
            0.141707219414880,
            0.307939838764121,
            0.550352941820999,
        ));
        weights.extend(vec![0.072757916845420; 6]);
        points.extend(perm6(
            0.025003534762686,
            0.246672560639903,
            0.728323904597411,
        ));
        weights.extend(vec![0.028327242531057; 6]);
        points.extend(perm6(
            0.009540815400299,
            0.066803251012200,
            0.923655933587500,
        ));
        weights.extend(vec![0.009421666963733; 6]);
        Self {
            points,
            weights,
            degree: 10,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factorial(n: usize) -> f64 {
        (1..=n).map(|k| k as f64).product()
    }

    /// On the reference triangle {s, u >= 0, s + u <= 1},
    /// integral of s^a u^b = a! b! / (a + b + 2)!; with unit-sum weights
    /// the rule approximates (1/area) * integral = 2 a! b! / (a+b+2)!.
    fn monomial_mean(a: usize, b: usize) -> f64 {
        2.0 * factorial(a) * factorial(b) / factorial(a + b + 2)
    }

    #[test]
    fn weights_sum_to_one() {
        for degree in [1, 2, 4, 6, 10] {
            let rule = TriangleQuadrature::with_degree(degree);
            let sum: f64 = rule.weights.iter().sum();
            assert!((sum - 1.0).abs() < 1e-13, "degree {degree}: {sum}");
        }
    }

    #[test]
    fn rules_are_exact_to_stated_degree() {
        for degree in [1, 2, 4, 6, 10] {
            let rule = TriangleQuadrature::with_degree(degree);
            for a in 0..=degree {
                for b in 0..=(degree - a) {
                    let approx: f64 = rule
                        .points
                        .iter()
                        .zip(&rule.weights)
                        .map(|(p, w)| {
                            // Barycentric (l0, l1, l2) maps to (s, u) = (l1, l2).
                            w * p[1].powi(a as i32) * p[2].powi(b as i32)
                        })
                        .sum();
                    let exact = monomial_mean(a, b);
                    assert!(
                        (approx - exact).abs() < 1e-14,
                        "degree {degree}, s^{a} u^{b}: {approx} vs {exact}"
                    );
                }
            }
        }
    }

    #[test]
    fn rule_selection_covers_requested_degree() {
        assert_eq!(TriangleQuadrature::with_degree(0).degree, 1);
        assert_eq!(TriangleQuadrature::with_degree(3).degree, 4);
        assert_eq!(TriangleQuadrature::with_degree(5).degree, 6);
        assert_eq!(TriangleQuadrature::with_degree(8).degree, 10);
    }
}
