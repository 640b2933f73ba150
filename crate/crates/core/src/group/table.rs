use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::word::{Letter, Word};

/// A finite group given by its multiplication table.
///
/// Elements are indexed `0..n`; each carries a representative word (its
/// normal form). Element `0` is the identity.
#[derive(Debug, Clone)]
pub struct FiniteTable {
    elements: Vec<Word>,
    index: BTreeMap<Word, usize>,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    // element index for each letter code
    letter_elems: Vec<usize>,
}

impl FiniteTable {
    /// Validates and builds a table.
    ///
    /// `letter_elems[2*g]` / `letter_elems[2*g+1]` give the elements of the
    /// generator `g` and its inverse.
    pub fn new(elements: Vec<Word>, table: Vec<Vec<usize>>, letter_elems: Vec<usize>) -> Result<Self> {
        let n = elements.len();
        if n == 0 {
            return Err(Error::Strategy("empty element list".into()));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::Strategy(format!("multiplication table is not {n}x{n}")));
        }
        if table.iter().flatten().any(|&k| k >= n) {
            return Err(Error::Strategy("table entry out of range".into()));
        }
        if !elements[0].is_identity() {
            return Err(Error::Strategy("element 0 must be the identity".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if table[0][i] != i || row[0] != i {
                return Err(Error::Strategy(format!("element 0 is not a two-sided identity at {i}")));
            }
        }
        let mut inverse = alloc::vec![usize::MAX; n];
        for i in 0..n {
            match (0..n).find(|&j| table[i][j] == 0 && table[j][i] == 0) {
                Some(j) => inverse[i] = j,
                None => return Err(Error::Strategy(format!("element {i} has no two-sided inverse"))),
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(Error::Strategy(format!("table is not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
        if !letter_elems.len().is_multiple_of(2) || letter_elems.iter().any(|&k| k >= n) {
            return Err(Error::Strategy("generator images out of range".into()));
        }
        for pair in letter_elems.chunks(2) {
            if inverse[pair[0]] != pair[1] {
                return Err(Error::Strategy("generator inverse image mismatch".into()));
            }
        }
        let mut index = BTreeMap::new();
        for (i, w) in elements.iter().enumerate() {
            if index.insert(w.clone(), i).is_some() {
                return Err(Error::Strategy(format!("duplicate element representative {w:?}")));
            }
        }
        Ok(FiniteTable { elements, index, table, inverse, letter_elems })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Word] {
        &self.elements
    }

    pub fn element_index(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn letter(&self, l: Letter) -> usize {
        self.letter_elems[l.code()]
    }

    pub fn evaluate(&self, w: &Word) -> usize {
        w.letters().fold(0, |acc, l| self.table[acc][self.letter(l)])
    }

    pub fn normal_form(&self, w: &Word) -> Word {
        self.elements[self.evaluate(w)].clone()
    }
}
