//! Finite monoids given by multiplication tables.
//!
//! These serve two roles: sources of standard presentations, and targets of
//! separating homomorphisms for refutation certificates. The built-in
//! library used by the separation search holds every monoid table of size
//! at most three plus the full transformation monoid on two points.

use std::sync::OnceLock;

use crate::core::presentation::{Presentation, Relation};
use crate::core::word::Word;
use crate::error::{Error, Result};

/// A finite monoid: element count, unit index and multiplication table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonoidTable {
    pub name: String,
    pub size: usize,
    pub unit: usize,
    /// `mul[i][j]` is the product `i · j`.
    pub mul: Vec<Vec<usize>>,
    /// Element names used when the table is turned into a presentation.
    pub elems: Vec<String>,
}

impl MonoidTable {
    pub fn new(name: impl Into<String>, unit: usize, mul: Vec<Vec<usize>>) -> Result<Self> {
        let size = mul.len();
        let table = MonoidTable {
            name: name.into(),
            size,
            unit,
            mul,
            elems: (0..size).map(|i| format!("m{i}")).collect(),
        };
        table.validate()?;
        Ok(table)
    }

    pub fn with_elems(mut self, elems: Vec<String>) -> Result<Self> {
        if elems.len() != self.size {
            return Err(Error::InvalidMonoid(format!(
                "{} element names for size {}",
                elems.len(),
                self.size
            )));
        }
        self.elems = elems;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.size == 0 {
            return Err(Error::InvalidMonoid("empty carrier".into()));
        }
        if self.unit >= self.size {
            return Err(Error::InvalidMonoid("unit index out of range".into()));
        }
        for row in &self.mul {
            if row.len() != self.size {
                return Err(Error::InvalidMonoid("ragged table".into()));
            }
            for &x in row {
                if x >= self.size {
                    return Err(Error::InvalidMonoid("entry out of range".into()));
                }
            }
        }
        for i in 0..self.size {
            if self.mul[self.unit][i] != i || self.mul[i][self.unit] != i {
                return Err(Error::InvalidMonoid(format!(
                    "{} is not a two-sided unit",
                    self.unit
                )));
            }
        }
        for a in 0..self.size {
            for b in 0..self.size {
                for c in 0..self.size {
                    if self.mul[self.mul[a][b]][c] != self.mul[a][self.mul[b][c]] {
                        return Err(Error::InvalidMonoid(format!(
                            "not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Evaluates the image of a word under an assignment of generators to
    /// elements.
    pub fn eval(&self, assignment: &[usize], w: &Word) -> usize {
        w.letters()
            .fold(self.unit, |acc, g| self.mul[acc][assignment[g.index()]])
    }

    /// The submonoid generated by `seed`, as a sorted element list.
    pub fn generated_submonoid(&self, seed: &[usize]) -> Vec<usize> {
        let mut in_sub = vec![false; self.size];
        in_sub[self.unit] = true;
        for &s in seed {
            in_sub[s] = true;
        }
        loop {
            let mut changed = false;
            for a in 0..self.size {
                if !in_sub[a] {
                    continue;
                }
                for b in 0..self.size {
                    if in_sub[b] && !in_sub[self.mul[a][b]] {
                        in_sub[self.mul[a][b]] = true;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        (0..self.size).filter(|&i| in_sub[i]).collect()
    }
}

/// All monoid tables of size at most `max_size` from the built-in library:
/// every table on `{0..n}` for `n ≤ 3` (associativity-validated, enumerated
/// once) followed by the full transformation monoid on two points.
pub fn builtin_monoids(max_size: usize) -> Vec<&'static MonoidTable> {
    static LIBRARY: OnceLock<Vec<MonoidTable>> = OnceLock::new();
    let lib = LIBRARY.get_or_init(|| {
        let mut out = Vec::new();
        for n in 1..=3usize {
            enumerate_tables(n, &mut out);
        }
        out.push(transformation_monoid_t2());
        out
    });
    lib.iter().filter(|m| m.size <= max_size).collect()
}

fn enumerate_tables(n: usize, out: &mut Vec<MonoidTable>) {
    // Walk all n^(n²) tables; positions vary fastest in the last cell so the
    // output order is lexicographic and stable.
    let cells = n * n;
    let mut digits = vec![0usize; cells];
    loop {
        let mul: Vec<Vec<usize>> = (0..n)
            .map(|i| (0..n).map(|j| digits[i * n + j]).collect())
            .collect();
        if let Some(unit) = find_unit(&mul) {
            if is_associative(&mul) {
                let idx = out.len();
                out.push(MonoidTable {
                    name: format!("m{n}_{idx}"),
                    size: n,
                    unit,
                    mul,
                    elems: (0..n).map(|i| format!("m{i}")).collect(),
                });
            }
        }
        // increment
        let mut pos = cells;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < n {
                break;
            }
            digits[pos] = 0;
        }
    }
}

fn find_unit(mul: &[Vec<usize>]) -> Option<usize> {
    let n = mul.len();
    (0..n).find(|&e| (0..n).all(|i| mul[e][i] == i && mul[i][e] == i))
}

fn is_associative(mul: &[Vec<usize>]) -> bool {
    let n = mul.len();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                    return false;
                }
            }
        }
    }
    true
}

/// The monoid of all maps `{0,1} → {0,1}` under composition; the smallest
/// noncommutative monoid in the library of size four.
pub fn transformation_monoid_t2() -> MonoidTable {
    // Elements: 0 = id, 1 = const 0, 2 = const 1, 3 = swap.
    // Product i·j is "apply j, then i" so that words read left-to-right as
    // function application order does not matter for the certificates; any
    // fixed convention works as long as the table is associative.
    let maps: [[usize; 2]; 4] = [[0, 1], [0, 0], [1, 1], [1, 0]];
    let compose = |f: [usize; 2], g: [usize; 2]| [f[g[0]], f[g[1]]];
    let index = |h: [usize; 2]| maps.iter().position(|m| *m == h).unwrap();
    let mul: Vec<Vec<usize>> = (0..4)
        .map(|i| (0..4).map(|j| index(compose(maps[i], maps[j]))).collect())
        .collect();
    MonoidTable {
        name: "t2".into(),
        size: 4,
        unit: 0,
        mul,
        elems: vec!["id".into(), "k0".into(), "k1".into(), "sw".into()],
    }
}

/// The length-truncated standard presentation of a finite monoid: one
/// generator per element, and every relation `u -> v` between words of
/// length at most `max_len` whose products agree. Reflexive.
pub fn std_presentation_truncated(table: &MonoidTable, max_len: usize) -> Result<Presentation> {
    table.validate()?;
    let gens: Vec<String> = table.elems.clone();
    let base = Presentation::new(gens.clone(), crate::core::presentation::RelSet::empty(), true)?;
    let assignment: Vec<usize> = (0..table.size).collect();
    let words = base.words_up_to(max_len);
    let mut rels = std::collections::BTreeSet::new();
    for lhs in &words {
        for rhs in &words {
            if lhs != rhs && table.eval(&assignment, lhs) == table.eval(&assignment, rhs) {
                rels.insert(Relation::new(lhs.clone(), rhs.clone()));
            }
        }
    }
    base.with_rels(crate::core::presentation::RelSet::Explicit(rels))
}
