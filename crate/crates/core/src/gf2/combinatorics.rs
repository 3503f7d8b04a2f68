use super::bitvec::BitVector;

/// Binomial coefficient, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// All `t`-subsets of `0..n` as sorted index lists, in lexicographic order.
#[derive(Debug, Clone)]
pub struct Combinations {
    n: usize,
    current: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub fn new(n: usize, t: usize) -> Self {
        Self {
            n,
            current: (0..t).collect(),
            done: t > n,
        }
    }

    /// Starts at the first subset whose smallest element is `first`.
    pub fn starting_with(n: usize, t: usize, first: usize) -> Self {
        if t == 0 || first + t > n {
            return Self {
                n,
                current: Vec::new(),
                done: true,
            };
        }
        Self {
            n,
            current: (first..first + t).collect(),
            done: false,
        }
    }

    fn advance(&mut self) {
        let t = self.current.len();
        let mut i = t;
        while i > 0 {
            i -= 1;
            if self.current[i] < self.n - t + i {
                self.current[i] += 1;
                for j in i + 1..t {
                    self.current[j] = self.current[j - 1] + 1;
                }
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        if self.current.is_empty() {
            self.done = true;
        } else {
            self.advance();
        }
        Some(out)
    }
}

/// Every weight-`w` vector of length `n`, ordered lexicographically by
/// support set.
pub fn enumerate_weight_w(n: usize, w: usize) -> impl Iterator<Item = BitVector> {
    Combinations::new(n, w).map(move |s| BitVector::from_support(n, &s))
}

/// All `t`-subsets of `items`, in lexicographic index order.
pub fn combinations<T: Clone>(items: &[T], t: usize) -> impl Iterator<Item = Vec<T>> + '_ {
    Combinations::new(items.len(), t)
        .map(move |idx| idx.iter().map(|&i| items[i].clone()).collect())
}

/// Depth-first walk over all weight-`w` supports of `0..n` in lexicographic
/// order, carrying an accumulator updated by XOR-ing per-position
/// contributions. `visit` sees the support and the accumulated value and
/// returns `false` to stop the walk early.
///
/// The walk is restricted to supports whose first element is in `first`.
pub fn walk_supports<F>(
    n: usize,
    w: usize,
    first: std::ops::Range<usize>,
    contrib: &[BitVector],
    zero: &BitVector,
    visit: &mut F,
) -> bool
where
    F: FnMut(&[usize], &BitVector) -> bool,
{
    #[allow(clippy::too_many_arguments)]
    fn rec<F>(
        n: usize,
        w: usize,
        start: usize,
        end: usize,
        support: &mut Vec<usize>,
        acc: &mut Vec<BitVector>,
        contrib: &[BitVector],
        visit: &mut F,
    ) -> bool
    where
        F: FnMut(&[usize], &BitVector) -> bool,
    {
        let depth = support.len();
        if depth == w {
            return visit(support, &acc[depth]);
        }
        let remaining = w - depth;
        for i in start..end.min(n + 1 - remaining) {
            let next = &acc[depth] ^ &contrib[i];
            acc[depth + 1] = next;
            support.push(i);
            let keep_going = rec(n, w, i + 1, n, support, acc, contrib, visit);
            support.pop();
            if !keep_going {
                return false;
            }
        }
        true
    }
    if w == 0 {
        return if first.start == 0 {
            visit(&[], zero)
        } else {
            true
        };
    }
    let mut acc = vec![zero.clone(); w + 1];
    let mut support = Vec::with_capacity(w);
    rec(
        n,
        w,
        first.start,
        first.end,
        &mut support,
        &mut acc,
        contrib,
        visit,
    )
}
