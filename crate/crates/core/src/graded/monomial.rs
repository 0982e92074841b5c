use super::chart::Chart;

/// A normal-ordered product of coordinates: `(index, exponent)` pairs sorted by
/// chart ordinal, exponents at least one, odd coordinates at most once.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<(usize, u32)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn var(index: usize) -> Monomial {
        Monomial(vec![(index, 1)])
    }

    /// Builds a monomial from already sorted factors. Returns `None` when an
    /// odd coordinate would appear squared.
    pub fn from_sorted(chart: &Chart, factors: Vec<(usize, u32)>) -> Option<Monomial> {
        debug_assert!(factors.windows(2).all(|w| w[0].0 < w[1].0));
        let mut out = Vec::with_capacity(factors.len());
        for (i, e) in factors {
            if e == 0 {
                continue;
            }
            if e > 1 && chart.is_odd(i) {
                return None;
            }
            out.push((i, e));
        }
        Some(Monomial(out))
    }

    pub fn factors(&self) -> &[(usize, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.0
            .binary_search_by_key(&index, |&(i, _)| i)
            .map(|pos| self.0[pos].1)
            .unwrap_or(0)
    }

    pub fn degree(&self, chart: &Chart) -> i64 {
        self.0.iter().map(|&(i, e)| chart.degree(i) * e as i64).sum()
    }

    /// Total exponent carried by coordinates satisfying `pred`.
    pub fn count_where(&self, mut pred: impl FnMut(usize) -> bool) -> u32 {
        self.0.iter().filter(|(i, _)| pred(*i)).map(|(_, e)| e).sum()
    }

    pub fn any_index(&self, mut pred: impl FnMut(usize) -> bool) -> bool {
        self.0.iter().any(|(i, _)| pred(*i))
    }

    /// Normal-ordered product `self * other`.
    ///
    /// Returns the Koszul sign picked up while sorting, or `None` when an odd
    /// coordinate occurs in both factors.
    pub fn mul(&self, other: &Monomial, chart: &Chart) -> Option<(bool, Monomial)> {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let mut negative = false;
        // number of odd factors of `self` not yet emitted
        let mut odd_left: u32 = a.iter().filter(|(i, _)| chart.is_odd(*i)).count() as u32;
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
            if take_a {
                if chart.is_odd(a[i].0) {
                    odd_left -= 1;
                }
                out.push(a[i]);
                i += 1;
            } else if i < a.len() && a[i].0 == b[j].0 {
                if chart.is_odd(a[i].0) {
                    return None;
                }
                out.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            } else {
                // b[j] passes over every remaining factor of `self`
                if chart.is_odd(b[j].0) && odd_left % 2 == 1 {
                    negative = !negative;
                }
                out.push(b[j]);
                j += 1;
            }
        }
        Some((negative, Monomial(out)))
    }

    /// Removes one factor of `index`, returning the exponent it had and the
    /// Koszul sign of moving a degree `-|index|` operator past the preceding
    /// factors. `None` if the coordinate does not occur.
    pub fn differentiate(&self, index: usize, chart: &Chart) -> Option<(u32, bool, Monomial)> {
        let pos = self.0.binary_search_by_key(&index, |&(i, _)| i).ok()?;
        let exp = self.0[pos].1;
        let negative =
            chart.is_odd(index) && self.0[..pos].iter().filter(|(i, _)| chart.is_odd(*i)).count() % 2 == 1;
        let mut factors = self.0.clone();
        if exp == 1 {
            factors.remove(pos);
        } else {
            factors[pos].1 -= 1;
        }
        Some((exp, negative, Monomial(factors)))
    }

    /// Keeps only the factors satisfying `pred`; indices are unchanged.
    pub(crate) fn retain(&self, mut pred: impl FnMut(usize) -> bool) -> Monomial {
        Monomial(self.0.iter().copied().filter(|(i, _)| pred(*i)).collect())
    }

    pub(crate) fn reindex(&self, mut map: impl FnMut(usize) -> usize) -> Monomial {
        let mut factors: Vec<_> = self.0.iter().map(|&(i, e)| (map(i), e)).collect();
        factors.sort_unstable();
        Monomial(factors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chart() -> Chart {
        Chart::new(&[("x", 0), ("a", 1), ("b", 1), ("u", 2)]).unwrap()
    }

    #[test]
    fn transposition_of_odd_generators() {
        let c = chart();
        let (neg, m) = Monomial::var(2).mul(&Monomial::var(1), &c).unwrap();
        assert!(neg);
        assert_eq!(m.factors(), &[(1, 1), (2, 1)]);
        let (neg, _) = Monomial::var(1).mul(&Monomial::var(2), &c).unwrap();
        assert!(!neg);
    }

    #[test]
    fn odd_square_vanishes_even_square_does_not() {
        let c = chart();
        assert!(Monomial::var(1).mul(&Monomial::var(1), &c).is_none());
        let (neg, m) = Monomial::var(3).mul(&Monomial::var(3), &c).unwrap();
        assert!(!neg);
        assert_eq!(m.exponent(3), 2);
    }

    #[test]
    fn left_derivative_sign() {
        let c = chart();
        let ab = Monomial::var(1).mul(&Monomial::var(2), &c).unwrap().1;
        let (e, neg, rest) = ab.differentiate(2, &c).unwrap();
        assert_eq!((e, neg), (1, true));
        assert_eq!(rest, Monomial::var(1));
        let (_, neg, rest) = ab.differentiate(1, &c).unwrap();
        assert!(!neg);
        assert_eq!(rest, Monomial::var(2));
    }
}
