//! Finite groups given by multiplication tables, with a weighted generator
//! list for Cayley walks.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct GroupPresentation {
    order: usize,
    mul: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
    generators: Vec<usize>,
    gen_probs: Vec<f64>,
    labels: Vec<String>,
    gen_labels: Vec<String>,
}

impl GroupPresentation {
    /// Builds a presentation from a row-major `order x order` table where
    /// `mul[g * order + h]` is the index of `g h`.
    pub fn new(
        order: usize,
        mul: Vec<usize>,
        generators: Vec<usize>,
        gen_probs: Vec<f64>,
    ) -> Result<Self> {
        let labels = (0..order).map(|g| g.to_string()).collect();
        Self::with_labels(order, mul, generators, gen_probs, labels)
    }

    fn with_labels(
        order: usize,
        mul: Vec<usize>,
        generators: Vec<usize>,
        gen_probs: Vec<f64>,
        labels: Vec<String>,
    ) -> Result<Self> {
        if order == 0 || mul.len() != order * order {
            return Err(Error::Group(format!(
                "table must have {order}x{order} entries, got {}",
                mul.len()
            )));
        }
        if let Some(bad) = mul.iter().find(|&&g| g >= order) {
            return Err(Error::Group(format!("table entry {bad} out of range")));
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|g| mul[e * order + g] == g && mul[g * order + e] == g))
            .ok_or_else(|| Error::Group("no identity element".into()))?;
        let mut inverse = vec![usize::MAX; order];
        for g in 0..order {
            inverse[g] = (0..order)
                .find(|&h| mul[g * order + h] == identity && mul[h * order + g] == identity)
                .ok_or_else(|| Error::Group(format!("element {g} has no inverse")))?;
        }
        check_associative(order, &mul)?;
        if generators.is_empty() || generators.len() != gen_probs.len() {
            return Err(Error::Group(
                "need a nonempty generator list with one probability each".into(),
            ));
        }
        if let Some(bad) = generators.iter().find(|&&s| s >= order) {
            return Err(Error::Group(format!("generator {bad} out of range")));
        }
        for (i, s) in generators.iter().enumerate() {
            if generators[..i].contains(s) {
                return Err(Error::Group(format!("generator {s} listed twice")));
            }
        }
        if gen_probs.iter().any(|p| !(*p > 0.0) || *p > 1.0) {
            return Err(Error::Group("generator probabilities must lie in (0,1]".into()));
        }
        let total: f64 = gen_probs.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::Group(format!("generator probabilities sum to {total}")));
        }
        let gen_labels = generators.iter().map(|&s| labels[s].clone()).collect();
        Ok(Self {
            order,
            mul,
            identity,
            inverse,
            generators,
            gen_probs,
            labels,
            gen_labels,
        })
    }

    /// `Z_n` written additively; generators are shifts (0 is the identity).
    pub fn cyclic(n: usize, shifts: &[i64], probs: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Group("Z_0 is not a group".into()));
        }
        let mul = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        let generators = shifts.iter().map(|&s| s.rem_euclid(n as i64) as usize).collect();
        let labels = (0..n).map(|g| g.to_string()).collect();
        let mut g = Self::with_labels(n, mul, generators, probs, labels)?;
        g.gen_labels = shifts
            .iter()
            .map(|&s| match s {
                0 => "id".to_string(),
                s if s > 0 => format!("+{s}"),
                s => s.to_string(),
            })
            .collect();
        Ok(g)
    }

    /// The symmetric group `S_k` on `{1, .., k}`; generators are given as
    /// permutations in one-line notation (0-based images). The product
    /// `g h` applies `h` first, then `g`.
    pub fn symmetric(k: usize, gens: &[Vec<usize>], probs: Vec<f64>) -> Result<Self> {
        if k == 0 || k > 6 {
            return Err(Error::Group(format!("S_{k} is not supported (1 <= k <= 6)")));
        }
        let elems = permutations(k);
        let index: HashMap<&[usize], usize> =
            elems.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
        let order = elems.len();
        let mut mul = vec![0; order * order];
        for (gi, g) in elems.iter().enumerate() {
            for (hi, h) in elems.iter().enumerate() {
                let gh: Vec<usize> = h.iter().map(|&i| g[i]).collect();
                mul[gi * order + hi] = index[gh.as_slice()];
            }
        }
        let mut generators = Vec::with_capacity(gens.len());
        for p in gens {
            let idx = index.get(p.as_slice()).ok_or_else(|| {
                Error::Group(format!("{p:?} is not a permutation of {k} points"))
            })?;
            generators.push(*idx);
        }
        let labels = elems.iter().map(|p| cycle_notation(p)).collect();
        Self::with_labels(order, mul, generators, probs, labels)
    }

    /// Parses `z<n>` or `s<k>` with a comma-separated generator list such as
    /// `id,+1` or `id,(12),(123)`.
    pub fn parse(group: &str, gens: &str, probs: &[f64]) -> Result<Self> {
        let group = group.trim().to_ascii_lowercase();
        let tokens: Vec<&str> = split_generators(gens);
        if let Some(n) = group.strip_prefix('z') {
            let n: usize = n
                .parse()
                .map_err(|_| Error::Group(format!("bad cyclic group '{group}'")))?;
            let shifts = tokens
                .iter()
                .map(|t| match *t {
                    "id" | "e" => Ok(0),
                    t => t
                        .trim_start_matches('+')
                        .parse::<i64>()
                        .map_err(|_| Error::Group(format!("bad Z_n generator '{t}'"))),
                })
                .collect::<Result<Vec<_>>>()?;
            Self::cyclic(n, &shifts, probs.to_vec())
        } else if let Some(k) = group.strip_prefix('s') {
            let k: usize = k
                .parse()
                .map_err(|_| Error::Group(format!("bad symmetric group '{group}'")))?;
            let perms = tokens
                .iter()
                .map(|t| parse_cycles(t, k))
                .collect::<Result<Vec<_>>>()?;
            Self::symmetric(k, &perms, probs.to_vec())
        } else {
            Err(Error::Group(format!("unknown group '{group}' (expected zN or sK)")))
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.mul[g * self.order + h]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn gen_probs(&self) -> &[f64] {
        &self.gen_probs
    }

    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    pub fn gen_label(&self, i: usize) -> &str {
        &self.gen_labels[i]
    }

    pub fn contains_identity(&self) -> bool {
        self.generators.contains(&self.identity)
    }

    /// Elements reachable from the identity by right multiplication with
    /// generators; for a finite group this is the subgroup they generate.
    pub fn generated_subgroup_size(&self) -> usize {
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut stack = vec![self.identity];
        while let Some(g) = stack.pop() {
            for &s in &self.generators {
                let h = self.mul(g, s);
                if !seen[h] {
                    seen[h] = true;
                    stack.push(h);
                }
            }
        }
        seen.iter().filter(|s| **s).count()
    }
}

fn check_associative(order: usize, mul: &[usize]) -> Result<()> {
    let m = |a: usize, b: usize| mul[a * order + b];
    let check = |a: usize, b: usize, c: usize| {
        if m(m(a, b), c) != m(a, m(b, c)) {
            Err(Error::Group(format!("not associative at ({a},{b},{c})")))
        } else {
            Ok(())
        }
    };
    if order <= 32 {
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    check(a, b, c)?;
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..4096 {
            check(
                rng.random_range(0..order),
                rng.random_range(0..order),
                rng.random_range(0..order),
            )?;
        }
    }
    Ok(())
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

pub(crate) fn split_generators(gens: &str) -> Vec<&str> {
    // Commas inside a cycle such as (1,2) do not separate generators.
    let mut out = Vec::new();
    let mut depth = 0;
    let mut start = 0;
    for (i, c) in gens.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(gens[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(gens[start..].trim());
    out.retain(|t| !t.is_empty());
    out
}

/// Parses cycle notation over `{1, .., k}`, e.g. `(12)(34)`, `(1 2 3)` or
/// `id`, into 0-based one-line notation. Cycles compose right to left.
pub fn parse_cycles(text: &str, k: usize) -> Result<Vec<usize>> {
    let mut perm: Vec<usize> = (0..k).collect();
    let text = text.trim();
    if text == "id" || text == "e" || text == "()" {
        return Ok(perm);
    }
    let bad = || Error::Group(format!("bad cycle notation '{text}'"));
    let mut cycles = Vec::new();
    let mut rest = text;
    while !rest.is_empty() {
        let open = rest.strip_prefix('(').ok_or_else(bad)?;
        let close = open.find(')').ok_or_else(bad)?;
        let body = &open[..close];
        let points: Vec<usize> = if body.contains([',', ' ']) {
            body.split([',', ' '])
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| bad()))
                .collect::<Result<_>>()?
        } else {
            body.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
                .collect::<Result<_>>()?
        };
        if points.iter().any(|&p| p == 0 || p > k) {
            return Err(bad());
        }
        cycles.push(points);
        rest = open[close + 1..].trim_start();
    }
    for cycle in cycles.iter().rev() {
        let mut step: Vec<usize> = (0..k).collect();
        for (i, &p) in cycle.iter().enumerate() {
            step[p - 1] = cycle[(i + 1) % cycle.len()] - 1;
        }
        perm = perm.iter().map(|&i| step[i]).collect();
    }
    Ok(perm)
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        out.push('(');
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            out.push_str(&(i + 1).to_string());
            i = p[i];
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("id");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_group_basics() {
        let z5 = GroupPresentation::cyclic(5, &[0, 1], vec![0.5, 0.5]).unwrap();
        assert_eq!(z5.order(), 5);
        assert_eq!(z5.identity(), 0);
        assert_eq!(z5.inverse(2), 3);
        assert_eq!(z5.mul(3, 4), 2);
        assert!(z5.contains_identity());
        assert_eq!(z5.gen_label(1), "+1");
        assert_eq!(z5.generated_subgroup_size(), 5);
    }

    #[test]
    fn symmetric_group_s3() {
        let s3 = GroupPresentation::parse("s3", "(12),(123)", &[0.5, 0.5]).unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.generated_subgroup_size(), 6);
        // (12) is an involution, (123) has order 3.
        let t = s3.generators()[0];
        let c = s3.generators()[1];
        assert_eq!(s3.mul(t, t), s3.identity());
        assert_eq!(s3.mul(c, s3.mul(c, c)), s3.identity());
        assert_ne!(s3.mul(c, c), s3.identity());
        // S_3 is non-abelian.
        assert_ne!(s3.mul(t, c), s3.mul(c, t));
        assert_eq!(s3.label(c), "(123)");
    }

    #[test]
    fn parse_cycles_forms() {
        assert_eq!(parse_cycles("(12)", 3).unwrap(), vec![1, 0, 2]);
        assert_eq!(parse_cycles("(1 2 3)", 3).unwrap(), vec![1, 2, 0]);
        assert_eq!(parse_cycles("(1,2)", 3).unwrap(), vec![1, 0, 2]);
        assert_eq!(parse_cycles("id", 3).unwrap(), vec![0, 1, 2]);
        // (12)(23): apply (23) first: 1->1->2, 2->3->3, 3->2->1.
        assert_eq!(parse_cycles("(12)(23)", 3).unwrap(), vec![1, 2, 0]);
        assert!(parse_cycles("(14)", 3).is_err());
        assert!(parse_cycles("12", 3).is_err());
    }

    #[test]
    fn parse_generator_lists() {
        let g = GroupPresentation::parse("S3", "id,(1,2),(123)", &[0.2, 0.4, 0.4]).unwrap();
        assert_eq!(g.generators().len(), 3);
        assert!(g.contains_identity());
        let z = GroupPresentation::parse("z7", "id,+1", &[0.5, 0.5]).unwrap();
        assert_eq!(z.generators(), &[0, 1]);
        assert!(GroupPresentation::parse("q8", "id", &[1.0]).is_err());
    }

    #[test]
    fn rejects_invalid_tables_and_probs() {
        // Not a group: constant table.
        assert!(GroupPresentation::new(2, vec![0, 0, 0, 0], vec![0], vec![1.0]).is_err());
        assert!(GroupPresentation::cyclic(3, &[1], vec![0.5]).is_err());
        assert!(GroupPresentation::cyclic(3, &[1, 1], vec![0.5, 0.5]).is_err());
    }

    #[test]
    fn non_generating_set_detected() {
        let g = GroupPresentation::cyclic(4, &[2], vec![1.0]).unwrap();
        assert_eq!(g.generated_subgroup_size(), 2);
    }
}
