//! Partition of the variables into blocks carried by disjoint factors.

use std::collections::BTreeMap;

use serde::Serialize;

use super::gcd::content_in;
use super::{FactoredForm, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VariableBlock {
    /// Zero-based variable indices, increasing.
    pub variables: Vec<usize>,
    /// Coprime sub-factors with their multiplicities.
    #[serde(serialize_with = "serialize_factors")]
    pub factors: Vec<(Polynomial, u32)>,
}

fn serialize_factors<S: serde::Serializer>(f: &[(Polynomial, u32)], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(f.iter().map(|(p, k)| (p.to_string(), *k)))
}

/// Splits every square-free part into pieces whose irreducible factors all
/// share the piece's support, then groups pieces by connected support.
pub fn variable_blocks(ff: &FactoredForm) -> Vec<VariableBlock> {
    let mut pieces: Vec<(Polynomial, u32)> = Vec::new();
    for (s, k) in &ff.factors {
        for a in support_atoms(s) {
            pieces.push((a, *k));
        }
    }
    let nvars = pieces.iter().map(|(p, _)| p.nvars()).max().unwrap_or(0);
    let mut parent: Vec<usize> = (0..nvars).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for (p, _) in &pieces {
        let sup: Vec<usize> = p.support().into_iter().collect();
        for w in sup.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut blocks: BTreeMap<usize, VariableBlock> = BTreeMap::new();
    for (p, k) in pieces {
        let sup = p.support();
        let root = find(&mut parent, *sup.iter().next().expect("nonconstant piece"));
        let b = blocks.entry(root).or_insert_with(|| VariableBlock {
            variables: Vec::new(),
            factors: Vec::new(),
        });
        b.variables.extend(sup);
        b.factors.push((p, k));
    }
    let mut out: Vec<VariableBlock> = blocks.into_values().collect();
    for b in &mut out {
        b.variables.sort_unstable();
        b.variables.dedup();
        b.factors.sort_by(|x, y| (x.1, &x.0.to_string()).cmp(&(y.1, &y.0.to_string())));
    }
    out.sort_by_key(|b| b.variables[0]);
    out
}

/// Coprime factorization of a square-free `p` into pieces that are primitive
/// in every variable they involve.
pub(crate) fn support_atoms(p: &Polynomial) -> Vec<Polynomial> {
    let mut done = Vec::new();
    let mut todo = vec![p.normalized()];
    'next: while let Some(q) = todo.pop() {
        if q.is_constant() {
            continue;
        }
        for v in q.support() {
            let c = content_in(&q, v);
            if !c.is_constant() {
                let rest = q.exact_div(&c).expect("content divides");
                todo.push(c.normalized());
                todo.push(rest.normalized());
                continue 'next;
            }
        }
        done.push(q);
    }
    done.sort_by(|a, b| {
        let (sa, sb) = (a.support(), b.support());
        sa.iter().next().cmp(&sb.iter().next()).then_with(|| a.to_string().cmp(&b.to_string()))
    });
    done
}
