//! Finite groups given by multiplication tables.

use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::SetCatError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

/// On-disk format: element labels and the table of products `row * column`,
/// entries given by label.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupTableFile {
    #[serde(default)]
    pub name: Option<String>,
    pub elements: Vec<String>,
    pub table: Vec<Vec<String>>,
}

impl FiniteGroup {
    /// Validates a table: closure is implied by the shape, then identity,
    /// inverses and associativity are checked.
    pub fn from_table(name: impl Into<String>, labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self, SetCatError> {
        let name = name.into();
        let n = labels.len();
        let bad = |reason: String| SetCatError::InvalidGroup { name: name.clone(), reason };
        if n == 0 {
            return Err(bad("empty carrier".into()));
        }
        if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(bad("table shape does not match the element list".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| bad("no identity element".into()))?;
        let mut inverse = vec![0; n];
        for x in 0..n {
            inverse[x] = (0..n)
                .find(|&y| table[x][y] == identity && table[y][x] == identity)
                .ok_or_else(|| bad(format!("{} has no inverse", labels[x])))?;
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if table[table[x][y]][z] != table[x][table[y][z]] {
                        return Err(bad(format!("not associative at ({}, {}, {})", labels[x], labels[y], labels[z])));
                    }
                }
            }
        }
        Ok(Self { name, labels, table, identity, inverse })
    }

    pub fn from_file_format(file: &GroupTableFile, default_name: &str) -> Result<Self, SetCatError> {
        let name = file.name.clone().unwrap_or_else(|| default_name.to_string());
        let index: HashMap<&str, usize> = file.elements.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        if index.len() != file.elements.len() {
            return Err(SetCatError::InvalidGroup { name, reason: "duplicate element labels".into() });
        }
        let mut table = Vec::with_capacity(file.table.len());
        for row in &file.table {
            let mut r = Vec::with_capacity(row.len());
            for lab in row {
                r.push(*index.get(lab.as_str()).ok_or_else(|| SetCatError::UnknownElement(lab.clone()))?);
            }
            table.push(r);
        }
        Self::from_table(name, file.elements.clone(), table)
    }

    pub fn load(path: &Path) -> Result<Self, SetCatError> {
        let text = std::fs::read_to_string(path).map_err(|e| SetCatError::Io(format!("{}: {e}", path.display())))?;
        let file: GroupTableFile =
            serde_json::from_str(&text).map_err(|e| SetCatError::Io(format!("{}: {e}", path.display())))?;
        Self::from_file_format(&file, &path.display().to_string())
    }

    pub fn to_file_format(&self) -> GroupTableFile {
        GroupTableFile {
            name: Some(self.name.clone()),
            elements: self.labels.clone(),
            table: self.table.iter().map(|r| r.iter().map(|&x| self.labels[x].clone()).collect()).collect(),
        }
    }

    /// `Sn`, `Zn` (or `Cn`), `Dn` for the dihedral group of order `2n`, or a
    /// path to a table file.
    pub fn parse_spec(spec: &str) -> Result<Self, SetCatError> {
        let num = |s: &str| s.parse::<usize>().ok().filter(|&n| n >= 1);
        if let Some(n) = spec.strip_prefix('S').and_then(num) {
            return Self::symmetric(n);
        }
        if let Some(n) = spec.strip_prefix('Z').or_else(|| spec.strip_prefix('C')).and_then(num) {
            return Ok(Self::cyclic(n));
        }
        if let Some(n) = spec.strip_prefix('D').and_then(num) {
            return Self::dihedral(n);
        }
        let path = Path::new(spec);
        if path.exists() {
            return Self::load(path);
        }
        Err(SetCatError::UnknownGroup(spec.to_string()))
    }

    /// Symmetric group on `{1..n}`, `n <= 5`. Products compose right to
    /// left: `(στ)(x) = σ(τ(x))`.
    pub fn symmetric(n: usize) -> Result<Self, SetCatError> {
        if n == 0 || n > 5 {
            return Err(SetCatError::InvalidGroup { name: format!("S{n}"), reason: "supported for 1 <= n <= 5".into() });
        }
        let mut perms: Vec<Vec<usize>> = vec![(0..n).collect()];
        // All permutations in lexicographic order.
        let mut cur: Vec<usize> = (0..n).collect();
        while next_permutation(&mut cur) {
            perms.push(cur.clone());
        }
        let index: HashMap<Vec<usize>, usize> = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let table = perms
            .iter()
            .map(|s| perms.iter().map(|t| index[&t.iter().map(|&x| s[x]).collect::<Vec<_>>()]).collect())
            .collect();
        let labels = perms.iter().map(|p| cycle_notation(p)).collect();
        Self::from_table(format!("S{n}"), labels, table)
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(format!("Z{n}"), (0..n).map(|k| k.to_string()).collect(), table).expect("cyclic group")
    }

    /// Symmetries of the `n`-gon: `r` a rotation, `s` a reflection, elements
    /// `s^a r^k`.
    pub fn dihedral(n: usize) -> Result<Self, SetCatError> {
        if n < 2 {
            return Err(SetCatError::InvalidGroup { name: format!("D{n}"), reason: "needs n >= 2".into() });
        }
        let elems: Vec<(usize, usize)> = (0..2).flat_map(|a| (0..n).map(move |k| (a, k))).collect();
        let idx = |a: usize, k: usize| a * n + k;
        let table = elems
            .iter()
            .map(|&(a, k)| {
                elems
                    .iter()
                    .map(|&(b, l)| {
                        // r^k s = s r^-k
                        let k2 = if b == 1 { (n - k) % n } else { k };
                        idx((a + b) % 2, (k2 + l) % n)
                    })
                    .collect()
            })
            .collect();
        let labels = elems
            .iter()
            .map(|&(a, k)| {
                let r = match k {
                    0 => String::new(),
                    1 => "r".into(),
                    _ => format!("r^{k}"),
                };
                match (a, r.is_empty()) {
                    (0, true) => "e".into(),
                    (0, false) => r,
                    (_, _) => format!("s{r}"),
                }
            })
            .collect();
        Self::from_table(format!("D{n}"), labels, table)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `a b a⁻¹`.
    pub fn conj(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.inv(a))
    }

    /// `a^k` for any integer `k`.
    pub fn pow(&self, a: usize, k: i32) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        (0..k.unsigned_abs()).fold(self.identity, |acc, _| self.mul(acc, base))
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn element(&self, label: &str) -> Result<usize, SetCatError> {
        let norm = |s: &str| s.chars().filter(|c| !c.is_whitespace()).collect::<String>();
        let want = norm(label);
        self.labels
            .iter()
            .position(|l| norm(l) == want)
            .or_else(|| (want == "1" || want == "id").then_some(self.identity).filter(|_| self.labels.iter().all(|l| l != "1")))
            .ok_or_else(|| SetCatError::UnknownElement(label.to_string()))
    }

    pub fn conjugacy_class(&self, a: usize) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.order()).map(|g| self.conj(g, a)).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for s in 0..p.len() {
        if seen[s] || p[s] == s {
            continue;
        }
        let mut cyc = vec![s + 1];
        seen[s] = true;
        let mut x = p[s];
        while x != s {
            seen[x] = true;
            cyc.push(x + 1);
            x = p[x];
        }
        out.push('(');
        out.push_str(&cyc.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "));
        out.push(')');
    }
    if out.is_empty() {
        "e".into()
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_and_labels() {
        assert_eq!(FiniteGroup::symmetric(3).unwrap().order(), 6);
        assert_eq!(FiniteGroup::symmetric(4).unwrap().order(), 24);
        assert_eq!(FiniteGroup::dihedral(4).unwrap().order(), 8);
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let a = s3.element("(1 2)").unwrap();
        let b = s3.element("(2 3)").unwrap();
        // (1 2)(2 3) sends 3 -> 2 -> 1, so it is (1 2 3).
        assert_eq!(s3.label(s3.mul(a, b)), "(1 2 3)");
        assert_eq!(s3.conjugacy_class(a).len(), 3);
        assert_eq!(s3.element("e").unwrap(), s3.identity());
    }

    #[test]
    fn dihedral_relations() {
        let d = FiniteGroup::dihedral(4).unwrap();
        let (r, s) = (d.element("r").unwrap(), d.element("s").unwrap());
        assert_eq!(d.pow(r, 4), d.identity());
        assert_eq!(d.mul(s, s), d.identity());
        assert_eq!(d.mul(d.mul(s, r), s), d.inv(r));
        assert_eq!(d.conjugacy_class(s).len(), 2);
    }

    #[test]
    fn table_file_roundtrip() {
        let g = FiniteGroup::dihedral(3).unwrap();
        let f = g.to_file_format();
        let back = FiniteGroup::from_file_format(&f, "x").unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn invalid_tables_are_rejected() {
        let labels = vec!["a".to_string(), "b".to_string()];
        assert!(FiniteGroup::from_table("bad", labels.clone(), vec![vec![0, 0], vec![0, 0]]).is_err());
        assert!(FiniteGroup::from_table("bad", labels, vec![vec![0, 1]]).is_err());
        assert!(matches!(FiniteGroup::parse_spec("Q8x"), Err(SetCatError::UnknownGroup(_))));
    }
}
