//! Word paths on Cayley graphs: `gamma_xy` follows a fixed shortest word for
//! `x^{-1} y`, translated to start at `x`.

use std::collections::VecDeque;

use crate::chain::MarkovChain;
use crate::error::{Error, Result};
use crate::group::GroupPresentation;
use crate::paths::{AlternatingPathFamily, PathFamily};

/// Plain word paths with their length and generator-count statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct CayleyPaths {
    pub family: PathFamily,
    /// Longest word used, `Delta`.
    pub diameter: usize,
    /// `words[g]` lists generator indices whose product is `g`.
    pub words: Vec<Vec<usize>>,
    /// `counts[g][i]` is `N(g, s_i)`.
    pub counts: Vec<Vec<usize>>,
    gen_probs: Vec<f64>,
}

impl CayleyPaths {
    /// `max_{g, s} N(g,s) / p(s)`.
    pub fn edge_bound(&self) -> f64 {
        self.counts
            .iter()
            .flat_map(|row| row.iter().zip(&self.gen_probs).map(|(&c, &p)| c as f64 / p))
            .fold(0.0, f64::max)
    }
}

fn check_chain(group: &GroupPresentation, chain: &MarkovChain) -> Result<()> {
    if chain.n() != group.order() {
        return Err(Error::Group(format!(
            "chain has {} states but the group has order {}",
            chain.n(),
            group.order()
        )));
    }
    Ok(())
}

/// Shortest words from the identity, scanning generators in list order and
/// skipping the identity generator.
pub fn cayley_word_paths(group: &GroupPresentation, chain: &MarkovChain) -> Result<CayleyPaths> {
    check_chain(group, chain)?;
    let order = group.order();
    let gens = group.generators();
    let id = group.identity();

    let mut parent: Vec<Option<(usize, usize)>> = vec![None; order];
    let mut seen = vec![false; order];
    seen[id] = true;
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for (i, &s) in gens.iter().enumerate() {
            if s == id {
                continue;
            }
            let h = group.mul(g, s);
            if !seen[h] {
                seen[h] = true;
                parent[h] = Some((g, i));
                queue.push_back(h);
            }
        }
    }
    if let Some(g) = seen.iter().position(|s| !s) {
        return Err(Error::Group(format!(
            "element {} is not a product of the generators",
            group.label(g)
        )));
    }

    let mut words = vec![Vec::new(); order];
    for (g, word) in words.iter_mut().enumerate() {
        let mut cur = g;
        while let Some((prev, i)) = parent[cur] {
            word.push(i);
            cur = prev;
        }
        word.reverse();
    }
    let diameter = words.iter().map(Vec::len).max().unwrap_or(0);
    let counts = words
        .iter()
        .map(|w| (0..gens.len()).map(|i| w.iter().filter(|&&j| j == i).count()).collect())
        .collect();

    let mut paths = vec![Vec::new(); order * order];
    for x in 0..order {
        for y in (0..order).filter(|&y| y != x) {
            let g = group.mul(group.inverse(x), y);
            let mut path = vec![x];
            let mut cur = x;
            for &i in &words[g] {
                cur = group.mul(cur, gens[i]);
                path.push(cur);
            }
            paths[x * order + y] = path;
        }
    }
    Ok(CayleyPaths {
        family: PathFamily::new(chain, paths)?,
        diameter,
        words,
        counts,
        gen_probs: group.gen_probs().to_vec(),
    })
}

/// Alternating word paths `s_1 s_2^{-1} s_3 ..` of odd length.
#[derive(Debug, Clone, PartialEq)]
pub struct CayleyAlternatingPaths {
    pub family: AlternatingPathFamily,
    /// Longest shortest alternating word, `Delta*`.
    pub diameter: usize,
    /// `words[g]` lists generator indices; odd positions (1-based) act by
    /// `s`, even positions by `s^{-1}`.
    pub words: Vec<Vec<usize>>,
}

/// Breadth-first search over `(element, parity)` from `(id, 0)`; the word for
/// `g` is the shortest path to `(g, 1)`.
pub fn cayley_alternating_diameter(
    group: &GroupPresentation,
    chain: &MarkovChain,
) -> Result<CayleyAlternatingPaths> {
    check_chain(group, chain)?;
    let order = group.order();
    let gens = group.generators();
    let id = group.identity();
    let node = |g: usize, parity: usize| g * 2 + parity;

    let mut parent: Vec<Option<(usize, usize)>> = vec![None; 2 * order];
    let mut seen = vec![false; 2 * order];
    seen[node(id, 0)] = true;
    let mut queue = VecDeque::from([node(id, 0)]);
    while let Some(cur) = queue.pop_front() {
        let (g, parity) = (cur / 2, cur % 2);
        for (i, &s) in gens.iter().enumerate() {
            let step = if parity == 0 { s } else { group.inverse(s) };
            let next = node(group.mul(g, step), 1 - parity);
            if !seen[next] {
                seen[next] = true;
                parent[next] = Some((cur, i));
                queue.push_back(next);
            }
        }
    }
    let missing: Vec<usize> = (0..order).filter(|&g| !seen[node(g, 1)]).collect();
    if let Some(&g) = missing.first() {
        return Err(Error::Group(format!(
            "{} of {order} elements (first: {}) have no odd alternating word",
            missing.len(),
            group.label(g)
        )));
    }

    let mut words = vec![Vec::new(); order];
    for (g, word) in words.iter_mut().enumerate() {
        let mut cur = node(g, 1);
        while let Some((prev, i)) = parent[cur] {
            word.push(i);
            cur = prev;
        }
        word.reverse();
    }
    let diameter = words.iter().map(Vec::len).max().unwrap_or(0);

    let mut paths = vec![Vec::new(); order * order];
    for x in 0..order {
        for y in 0..order {
            let g = group.mul(group.inverse(x), y);
            let mut path = vec![x];
            let mut cur = x;
            for (k, &i) in words[g].iter().enumerate() {
                let s = gens[i];
                cur = group.mul(cur, if k % 2 == 0 { s } else { group.inverse(s) });
                path.push(cur);
            }
            paths[x * order + y] = path;
        }
    }
    Ok(CayleyAlternatingPaths {
        family: AlternatingPathFamily::new(chain, paths)?,
        diameter,
        words,
    })
}
