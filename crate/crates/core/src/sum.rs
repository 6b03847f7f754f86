use crate::Scalar;

/// Neumaier-compensated running sum.
///
/// Carries the rounding error of every addition in a separate term, so the
/// result stays accurate over long series of terms with mixed magnitude.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CompensatedSum<T> {
    sum: T,
    compensation: T,
}

impl<T: Scalar> CompensatedSum<T> {
    pub fn new() -> Self {
        Self {
            sum: T::zero(),
            compensation: T::zero(),
        }
    }

    #[inline]
    pub fn add(&mut self, x: T) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> T {
        self.sum + self.compensation
    }
}

impl<T: Scalar> Extend<T> for CompensatedSum<T> {
    fn extend<I: IntoIterator<Item = T>>(&mut self, iter: I) {
        for x in iter {
            self.add(x);
        }
    }
}

impl<T: Scalar> FromIterator<T> for CompensatedSum<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        let mut s = Self::new();
        s.extend(iter);
        s
    }
}

/// Compensated sum of a slice.
pub fn compensated_sum<T: Scalar>(xs: &[T]) -> T {
    xs.iter().copied().collect::<CompensatedSum<T>>().value()
}

/// Mean taken relative to the first element, so a constant slice yields that
/// constant exactly.
pub fn pivoted_mean<T: Scalar>(xs: &[T]) -> Option<T> {
    let pivot = *xs.first()?;
    let offset: CompensatedSum<T> = xs.iter().map(|&x| x - pivot).collect();
    Some(pivot + offset.value() / T::from_count(xs.len() as u64))
}
