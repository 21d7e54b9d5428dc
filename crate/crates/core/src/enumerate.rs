//! Enumeration of non-negative integer vectors `g` with `Σ w_k g_k = target`.
//!
//! Nested bounded counters with pruning by the remaining weight. Output is in
//! descending lexicographic order over the slot sequence, so the first vector
//! puts as much weight as possible on slot 0.

/// Weighted compositions of a fixed target over positive slot weights.
#[derive(Debug, Clone)]
pub struct WeightedCompositions {
    weights: Vec<u32>,
    target: u32,
}

impl WeightedCompositions {
    /// Panics if any weight is zero (the enumeration would be infinite).
    pub fn new(weights: Vec<u32>, target: u32) -> Self {
        assert!(weights.iter().all(|&w| w > 0), "slot weights must be positive");
        WeightedCompositions { weights, target }
    }

    pub fn for_each<F: FnMut(&[u32])>(&self, mut visit: F) {
        let mut current = vec![0u32; self.weights.len()];
        self.walk(0, self.target, &mut current, &mut visit);
    }

    fn walk<F: FnMut(&[u32])>(&self, slot: usize, remaining: u32, cur: &mut [u32], visit: &mut F) {
        if slot == self.weights.len() {
            if remaining == 0 {
                visit(cur);
            }
            return;
        }
        if remaining == 0 {
            // every later slot is forced to zero
            for c in cur[slot..].iter_mut() {
                *c = 0;
            }
            visit(cur);
            return;
        }
        let w = self.weights[slot];
        if slot + 1 == self.weights.len() {
            if remaining.is_multiple_of(w) {
                cur[slot] = remaining / w;
                visit(cur);
                cur[slot] = 0;
            }
            return;
        }
        for g in (0..=remaining / w).rev() {
            cur[slot] = g;
            self.walk(slot + 1, remaining - g * w, cur, visit);
        }
        cur[slot] = 0;
    }

    pub fn collect(&self) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        self.for_each(|g| out.push(g.to_vec()));
        out
    }

    pub fn count(&self) -> usize {
        let mut n = 0;
        self.for_each(|_| n += 1);
        n
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // brute force over the full box [0, target/w_k]
    fn brute(weights: &[u32], target: u32) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let bounds: Vec<u32> = weights.iter().map(|w| target / w).collect();
        let mut cur = vec![0u32; weights.len()];
        loop {
            let s: u32 = cur.iter().zip(weights).map(|(g, w)| g * w).sum();
            if s == target {
                out.push(cur.clone());
            }
            let mut k = 0;
            loop {
                if k == cur.len() {
                    return out;
                }
                if cur[k] < bounds[k] {
                    cur[k] += 1;
                    break;
                }
                cur[k] = 0;
                k += 1;
            }
        }
    }

    #[test]
    fn matches_brute_force() {
        for weights in [vec![1, 2], vec![1, 1, 2, 2], vec![1, 2, 3, 2, 3], vec![3, 1, 4]] {
            for target in 0..9 {
                let mut fast = WeightedCompositions::new(weights.clone(), target).collect();
                let mut slow = brute(&weights, target);
                fast.sort();
                slow.sort();
                assert_eq!(fast, slow, "weights {weights:?} target {target}");
            }
        }
    }

    #[test]
    fn descending_lex_order() {
        let all = WeightedCompositions::new(vec![1, 1, 2, 2], 2).collect();
        assert_eq!(
            all,
            vec![
                vec![2, 0, 0, 0],
                vec![1, 1, 0, 0],
                vec![0, 2, 0, 0],
                vec![0, 0, 1, 0],
                vec![0, 0, 0, 1]
            ]
        );
    }

    #[test]
    fn zero_target_has_one_solution() {
        assert_eq!(WeightedCompositions::new(vec![1, 2, 3], 0).collect(), vec![vec![0, 0, 0]]);
        assert_eq!(WeightedCompositions::new(vec![], 0).count(), 1);
        assert_eq!(WeightedCompositions::new(vec![], 3).count(), 0);
    }
}
