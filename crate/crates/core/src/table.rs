//! Concrete finite groups as multiplication tables, and pairs of normal
//! subgroups embedded in a common overgroup.
//!
//! Tables are the ground truth every construction is instantiated from and
//! validated against. The file format is line based: `order: n` followed by
//! n rows of n space-separated 1-based element indices; see
//! `docs/formats.md`. Built-in specs: `cyclic:n`, `dihedral:n` (order 2n),
//! `dihedral2:n` (dihedral of order n, n a power of two), `quaternion:8`,
//! `quaternion:16`, `modular:16`, `abelian:[d1,d2,...]`.

use crate::error::Error;
use crate::snf::{smith_normal_form, IntMatrix};

/// A finite group given by its full multiplication table (0-based indices).
#[derive(Clone, Debug)]
pub struct FiniteGroupTable {
    n: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    id: u32,
    names: Vec<String>,
    spec: Option<String>,
}

impl PartialEq for FiniteGroupTable {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.mul == other.mul
    }
}
impl Eq for FiniteGroupTable {}

impl FiniteGroupTable {
    /// Validate and wrap a raw table. `mul[a * n + b]` is the product `ab`.
    pub fn new(n: usize, mul: Vec<u32>) -> Result<Self, Error> {
        Self::with_names(n, mul, (1..=n).map(|i| format!("e{i}")).collect())
    }

    fn with_names(n: usize, mul: Vec<u32>, names: Vec<String>) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::InvalidTable("order must be positive".into()));
        }
        if mul.len() != n * n {
            return Err(Error::InvalidTable("table size is not order^2".into()));
        }
        if mul.iter().any(|&v| v as usize >= n) {
            return Err(Error::InvalidTable("entry out of range".into()));
        }
        // Identity.
        let mut id = None;
        for e in 0..n as u32 {
            if (0..n as u32).all(|a| mul[e as usize * n + a as usize] == a)
                && (0..n as u32).all(|a| mul[a as usize * n + e as usize] == a)
            {
                id = Some(e);
                break;
            }
        }
        let id = id.ok_or_else(|| Error::InvalidTable("no identity element".into()))?;
        // Inverses.
        let mut inv = vec![u32::MAX; n];
        for a in 0..n {
            let found = (0..n as u32).find(|&b| {
                mul[a * n + b as usize] == id && mul[b as usize * n + a] == id
            });
            inv[a] = found.ok_or_else(|| {
                Error::InvalidTable(format!("element {} has no inverse", a + 1))
            })?;
        }
        // Associativity, exhaustive.
        for a in 0..n {
            for b in 0..n {
                let ab = mul[a * n + b] as usize;
                for c in 0..n {
                    let bc = mul[b * n + c] as usize;
                    if mul[ab * n + c] != mul[a * n + bc] {
                        return Err(Error::InvalidTable(format!(
                            "associativity fails at ({}, {}, {})",
                            a + 1,
                            b + 1,
                            c + 1
                        )));
                    }
                }
            }
        }
        if names.len() != n {
            return Err(Error::InvalidTable("name count mismatch".into()));
        }
        Ok(FiniteGroupTable { n, mul, inv, id, names, spec: None })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> u32 {
        self.id
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.n + b as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    /// `a^k` for any integer k.
    pub fn pow(&self, a: u32, k: i64) -> u32 {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut out = self.id;
        for _ in 0..k.unsigned_abs() {
            out = self.mul(out, base);
        }
        out
    }

    /// `b^-1 a b`.
    pub fn conj(&self, a: u32, b: u32) -> u32 {
        self.mul(self.mul(self.inv(b), a), b)
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    pub fn comm(&self, a: u32, b: u32) -> u32 {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn element_order(&self, a: u32) -> u64 {
        let mut x = a;
        let mut k = 1u64;
        while x != self.id {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> u64 {
        (0..self.n as u32).fold(1u64, |acc, a| num_integer::lcm(acc, self.element_order(a)))
    }

    pub fn name(&self, a: u32) -> &str {
        &self.names[a as usize]
    }

    pub fn spec(&self) -> Option<&str> {
        self.spec.as_deref()
    }

    /// Subgroup generated by `gens`, as a sorted element list.
    pub fn closure(&self, gens: &[u32]) -> Vec<u32> {
        let mut in_set = vec![false; self.n];
        in_set[self.id as usize] = true;
        let mut out = vec![self.id];
        let mut frontier = vec![self.id];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                for y in [self.mul(x, g), self.mul(x, self.inv(g))] {
                    if !in_set[y as usize] {
                        in_set[y as usize] = true;
                        out.push(y);
                        frontier.push(y);
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Exhaustive subgroup check for a sorted element list.
    pub fn is_subgroup(&self, set: &[u32]) -> bool {
        if set.binary_search(&self.id).is_err() {
            return false;
        }
        set.iter().all(|&a| {
            set.binary_search(&self.inv(a)).is_ok()
                && set.iter().all(|&b| set.binary_search(&self.mul(a, b)).is_ok())
        })
    }

    /// Exhaustive normality check for a sorted subgroup list.
    pub fn is_normal(&self, set: &[u32]) -> bool {
        set.iter().all(|&a| {
            (0..self.n as u32).all(|g| set.binary_search(&self.conj(a, g)).is_ok())
        })
    }

    /// Set product `{ab | a in A, b in B}`, sorted. A subgroup when one
    /// factor normalizes the other.
    pub fn set_product(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for &x in a {
            for &y in b {
                let z = self.mul(x, y);
                if !seen[z as usize] {
                    seen[z as usize] = true;
                    out.push(z);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Subgroup generated by all commutators of elements of `set`.
    pub fn derived_of(&self, set: &[u32]) -> Vec<u32> {
        let mut gens = Vec::new();
        for &a in set {
            for &b in set {
                gens.push(self.comm(a, b));
            }
        }
        gens.sort_unstable();
        gens.dedup();
        self.closure(&gens)
    }

    /// Subgroup generated by q-th powers of elements of `set`.
    pub fn power_subgroup(&self, set: &[u32], q: u32) -> Vec<u32> {
        let mut gens: Vec<u32> = set.iter().map(|&a| self.pow(a, q as i64)).collect();
        gens.sort_unstable();
        gens.dedup();
        self.closure(&gens)
    }

    /// Lower central series `G = γ_1 > γ_2 > ...` down to the point where it
    /// stabilizes. Entries are sorted element lists.
    pub fn lower_central_series(&self) -> Vec<Vec<u32>> {
        let whole: Vec<u32> = (0..self.n as u32).collect();
        let mut series = vec![whole.clone()];
        loop {
            let last = series.last().unwrap();
            let mut gens = Vec::new();
            for &a in last {
                for &g in &whole {
                    gens.push(self.comm(a, g));
                }
            }
            gens.sort_unstable();
            gens.dedup();
            let next = self.closure(&gens);
            if &next == last {
                break;
            }
            series.push(next.clone());
            if next.len() == 1 {
                break;
            }
        }
        series
    }

    /// Nilpotency class; `None` when the group is not nilpotent.
    pub fn nilpotency_class(&self) -> Option<u32> {
        let series = self.lower_central_series();
        if series.last().unwrap().len() == 1 {
            Some(series.len() as u32 - 1)
        } else {
            None
        }
    }

    /// Derived length.
    pub fn derived_length(&self) -> u32 {
        let mut set: Vec<u32> = (0..self.n as u32).collect();
        let mut len = 0;
        while set.len() > 1 {
            set = self.derived_of(&set);
            len += 1;
        }
        len
    }

    /// The multiplication table of a subgroup, reindexed to 0..|set|.
    pub fn subgroup_table(&self, set: &[u32]) -> Result<FiniteGroupTable, Error> {
        if !self.is_subgroup(set) {
            return Err(Error::NotASubgroup("subgroup_table".into()));
        }
        let pos = |x: u32| set.binary_search(&x).expect("closed subset") as u32;
        let m = set.len();
        let mut mul = vec![0u32; m * m];
        for (i, &a) in set.iter().enumerate() {
            for (j, &b) in set.iter().enumerate() {
                mul[i * m + j] = pos(self.mul(a, b));
            }
        }
        let names = set.iter().map(|&a| self.names[a as usize].clone()).collect();
        FiniteGroupTable::with_names(m, mul, names)
    }

    /// Derived length of a subgroup given as a sorted element list.
    pub fn derived_length_of(&self, set: &[u32]) -> u32 {
        let mut cur = set.to_vec();
        let mut len = 0;
        while cur.len() > 1 {
            cur = self.derived_of(&cur);
            len += 1;
        }
        len
    }

    /// Nilpotency class of a subgroup given as a sorted element list;
    /// `None` when it is not nilpotent.
    pub fn nilpotency_class_of(&self, set: &[u32]) -> Option<u32> {
        let mut series = vec![set.to_vec()];
        loop {
            let last = series.last().unwrap();
            let mut gens = Vec::new();
            for &a in last {
                for &g in set {
                    gens.push(self.comm(a, g));
                }
            }
            gens.sort_unstable();
            gens.dedup();
            let next = self.closure(&gens);
            if &next == last {
                return None;
            }
            let done = next.len() == 1;
            series.push(next);
            if done {
                return Some(series.len() as u32 - 1);
            }
        }
    }

    /// Quotient by a sorted normal subgroup: the coset table plus the map
    /// element -> coset index. Coset numbering follows the smallest element
    /// of each coset.
    pub fn quotient(&self, normal: &[u32]) -> Result<(FiniteGroupTable, Vec<u32>), Error> {
        if !self.is_subgroup(normal) {
            return Err(Error::NotASubgroup("quotient by non-subgroup".into()));
        }
        if !self.is_normal(normal) {
            return Err(Error::NotNormal("quotient".into()));
        }
        let mut coset_of = vec![u32::MAX; self.n];
        let mut reps = Vec::new();
        for a in 0..self.n as u32 {
            if coset_of[a as usize] != u32::MAX {
                continue;
            }
            let idx = reps.len() as u32;
            reps.push(a);
            for &h in normal {
                coset_of[self.mul(a, h) as usize] = idx;
            }
        }
        let m = reps.len();
        let mut mul = vec![0u32; m * m];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                mul[i * m + j] = coset_of[self.mul(a, b) as usize];
            }
        }
        let names = reps.iter().map(|&r| format!("[{}]", self.names[r as usize])).collect();
        Ok((FiniteGroupTable::with_names(m, mul, names)?, coset_of))
    }

    /// Relation matrix of the element-wise presentation: one row
    /// `e_a + e_b - e_ab` per pair, used for abelianization.
    pub fn relation_matrix(&self) -> IntMatrix {
        let n = self.n;
        let mut m = IntMatrix::zero(n * n, n);
        for a in 0..n {
            for b in 0..n {
                let row = a * n + b;
                let ab = self.mul(a as u32, b as u32) as usize;
                m.set(row, a, m.get(row, a) + 1);
                m.set(row, b, m.get(row, b) + 1);
                m.set(row, ab, m.get(row, ab) - 1);
            }
        }
        m
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("order: {}\n", self.n);
        for a in 0..self.n {
            let row: Vec<String> =
                (0..self.n).map(|b| (self.mul[a * self.n + b] + 1).to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, Error> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (lno, first) = lines
            .next()
            .ok_or(Error::Parse { line: 0, msg: "empty table file".into() })?;
        let n: usize = first
            .strip_prefix("order:")
            .ok_or(Error::Parse { line: lno, msg: "expected `order: n`".into() })?
            .trim()
            .parse()
            .map_err(|_| Error::Parse { line: lno, msg: "bad order".into() })?;
        let mut mul = Vec::with_capacity(n * n);
        for _ in 0..n {
            let (lno, row) = lines
                .next()
                .ok_or(Error::Parse { line: 0, msg: "missing table row".into() })?;
            for tok in row.split_whitespace() {
                let v: u32 = tok
                    .parse()
                    .map_err(|_| Error::Parse { line: lno, msg: format!("bad entry `{tok}`") })?;
                if v == 0 {
                    return Err(Error::Parse { line: lno, msg: "entries are 1-based".into() });
                }
                mul.push(v - 1);
            }
            if mul.len() % n != 0 {
                return Err(Error::Parse { line: lno, msg: "row has wrong length".into() });
            }
        }
        Self::new(n, mul)
    }

    // ----- built-in families -----

    pub fn cyclic(n: u64) -> Self {
        let n = n as usize;
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = ((a + b) % n) as u32;
            }
        }
        let names = (0..n)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "g".to_string(),
                _ => format!("g^{i}"),
            })
            .collect();
        let mut t = Self::with_names(n, mul, names).expect("cyclic table");
        t.spec = Some(format!("cyclic:{n}"));
        t
    }

    /// Dihedral group of order 2n: elements `r^i s^j`, index `i + n*j`.
    pub fn dihedral(n: u64) -> Self {
        let n = n as usize;
        let m = 2 * n;
        let mut mul = vec![0u32; m * m];
        for i1 in 0..n {
            for j1 in 0..2 {
                for i2 in 0..n {
                    for j2 in 0..2 {
                        // r^i1 s^j1 r^i2 s^j2 = r^(i1 + (-1)^j1 i2) s^(j1+j2)
                        let i = if j1 == 0 { (i1 + i2) % n } else { (i1 + n - i2 % n) % n };
                        let j = (j1 + j2) % 2;
                        mul[(i1 + n * j1) * m + (i2 + n * j2)] = (i + n * j) as u32;
                    }
                }
            }
        }
        let names = (0..m)
            .map(|e| {
                let (i, j) = (e % n, e / n);
                match (i, j) {
                    (0, 0) => "1".into(),
                    (i, 0) if i == 1 => "r".into(),
                    (i, 0) => format!("r^{i}"),
                    (0, 1) => "s".into(),
                    (1, 1) => "r s".into(),
                    (i, 1) => format!("r^{i} s"),
                    _ => unreachable!(),
                }
            })
            .collect();
        let mut t = Self::with_names(m, mul, names).expect("dihedral table");
        t.spec = Some(format!("dihedral:{n}"));
        t
    }

    /// Generalized quaternion group of order 4m (m = 2: Q8, m = 4: Q16).
    /// Elements `a^i b^j`, i < 2m, j < 2, with `b^2 = a^m`, `a^b = a^-1`.
    pub fn quaternion(order: u64) -> Result<Self, Error> {
        if order % 4 != 0 || order < 8 {
            return Err(Error::UnknownGroupSpec(format!("quaternion:{order}")));
        }
        let m = (order / 4) as usize;
        let two_m = 2 * m;
        let sz = 4 * m;
        let mut mul = vec![0u32; sz * sz];
        let idx = |i: usize, j: usize| i + two_m * j;
        for i1 in 0..two_m {
            for j1 in 0..2 {
                for i2 in 0..two_m {
                    for j2 in 0..2 {
                        let i = if j1 == 0 {
                            (i1 + i2) % two_m
                        } else {
                            (i1 + two_m - i2 % two_m) % two_m
                        };
                        let (i, j) = if j1 + j2 == 2 { ((i + m) % two_m, 0) } else { (i, j1 + j2) };
                        mul[idx(i1, j1) * sz + idx(i2, j2)] = idx(i, j) as u32;
                    }
                }
            }
        }
        let names = (0..sz)
            .map(|e| {
                let (i, j) = (e % two_m, e / two_m);
                match (i, j) {
                    (0, 0) => "1".into(),
                    (1, 0) => "a".into(),
                    (i, 0) => format!("a^{i}"),
                    (0, 1) => "b".into(),
                    (i, 1) => format!("a^{i} b"),
                    _ => unreachable!(),
                }
            })
            .collect();
        let mut t = Self::with_names(sz, mul, names)?;
        t.spec = Some(format!("quaternion:{order}"));
        Ok(t)
    }

    /// Modular (Iwasawa) group of order 16: `a^8 = b^2 = 1`, `a^b = a^5`.
    pub fn modular16() -> Self {
        let sz = 16;
        let mut mul = vec![0u32; sz * sz];
        let idx = |i: usize, j: usize| i + 8 * j;
        for i1 in 0..8 {
            for j1 in 0..2 {
                for i2 in 0..8 {
                    for j2 in 0..2 {
                        let factor = if j1 == 0 { 1 } else { 5 };
                        let i = (i1 + factor * i2) % 8;
                        let j = (j1 + j2) % 2;
                        mul[idx(i1, j1) * sz + idx(i2, j2)] = idx(i, j) as u32;
                    }
                }
            }
        }
        let names = (0..sz)
            .map(|e| {
                let (i, j) = (e % 8, e / 8);
                match (i, j) {
                    (0, 0) => "1".into(),
                    (1, 0) => "a".into(),
                    (i, 0) => format!("a^{i}"),
                    (0, 1) => "b".into(),
                    (i, 1) => format!("a^{i} b"),
                    _ => unreachable!(),
                }
            })
            .collect();
        let mut t = Self::with_names(sz, mul, names).expect("modular table");
        t.spec = Some("modular:16".into());
        t
    }

    /// Direct product of cyclic groups of the given orders.
    pub fn abelian(orders: &[u64]) -> Result<Self, Error> {
        if orders.is_empty() || orders.iter().any(|&d| d == 0) {
            return Err(Error::UnknownGroupSpec(format!("abelian:{orders:?}")));
        }
        let n: u64 = orders.iter().product();
        let n = n as usize;
        let k = orders.len();
        let decode = |mut e: usize| -> Vec<u64> {
            let mut tuple = vec![0u64; k];
            for i in (0..k).rev() {
                tuple[i] = (e as u64) % orders[i];
                e /= orders[i] as usize;
            }
            tuple
        };
        let encode = |tuple: &[u64]| -> usize {
            tuple.iter().zip(orders).fold(0usize, |acc, (&t, &d)| acc * d as usize + t as usize)
        };
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                let ta = decode(a);
                let tb = decode(b);
                let tc: Vec<u64> =
                    ta.iter().zip(&tb).zip(orders).map(|((&x, &y), &d)| (x + y) % d).collect();
                mul[a * n + b] = encode(&tc) as u32;
            }
        }
        let names = (0..n)
            .map(|e| {
                let t = decode(e);
                let parts: Vec<String> = t
                    .iter()
                    .enumerate()
                    .filter(|(_, &v)| v != 0)
                    .map(|(i, &v)| if v == 1 { format!("g{}", i + 1) } else { format!("g{}^{v}", i + 1) })
                    .collect();
                if parts.is_empty() {
                    "1".into()
                } else {
                    parts.join(" ")
                }
            })
            .collect();
        let mut t = Self::with_names(n, mul, names)?;
        let spec_list: Vec<String> = orders.iter().map(|d| d.to_string()).collect();
        t.spec = Some(format!("abelian:[{}]", spec_list.join(",")));
        Ok(t)
    }

    /// Parse a built-in group spec such as `dihedral:4` or `abelian:[2,2]`.
    pub fn from_spec(spec: &str) -> Result<Self, Error> {
        let bad = || Error::UnknownGroupSpec(spec.to_string());
        let (family, arg) = spec.split_once(':').ok_or_else(bad)?;
        match family {
            "cyclic" => {
                let n: u64 = arg.parse().map_err(|_| bad())?;
                if n == 0 {
                    return Err(bad());
                }
                Ok(Self::cyclic(n))
            }
            "dihedral" => {
                let n: u64 = arg.parse().map_err(|_| bad())?;
                if n < 2 {
                    return Err(bad());
                }
                Ok(Self::dihedral(n))
            }
            "dihedral2" => {
                // Alias family: dihedral2:n is the dihedral group of order n,
                // n a power of two >= 8.
                let n: u64 = arg.parse().map_err(|_| bad())?;
                if n < 8 || !n.is_power_of_two() {
                    return Err(bad());
                }
                Ok(Self::dihedral(n / 2))
            }
            "quaternion" => {
                let n: u64 = arg.parse().map_err(|_| bad())?;
                Self::quaternion(n)
            }
            "modular" => {
                if arg != "16" {
                    return Err(bad());
                }
                Ok(Self::modular16())
            }
            "abelian" => {
                let inner = arg.strip_prefix('[').and_then(|s| s.strip_suffix(']')).ok_or_else(bad)?;
                let orders: Result<Vec<u64>, _> =
                    inner.split(',').map(|t| t.trim().parse::<u64>()).collect();
                Self::abelian(&orders.map_err(|_| bad())?)
            }
            _ => Err(bad()),
        }
    }
}

/// Whether `G = G' G^q`, decided through the Smith form of the element-wise
/// relation matrix augmented with `q * I`.
pub fn is_q_perfect(table: &FiniteGroupTable, q: u32) -> bool {
    let n = table.order();
    let rel = table.relation_matrix();
    let mut rows = Vec::with_capacity(rel.rows() + n);
    for i in 0..rel.rows() {
        rows.push((0..n).map(|j| rel.get(i, j)).collect::<Vec<i64>>());
    }
    for i in 0..n {
        let mut row = vec![0i64; n];
        row[i] = q as i64;
        rows.push(row);
    }
    let d = smith_normal_form(&IntMatrix::from_rows(&rows));
    d.iter().all(|&v| v == 1)
}

/// Two normal subgroups of a common overgroup, with their intersection.
#[derive(Clone, Debug)]
pub struct EmbeddedPair {
    l: FiniteGroupTable,
    g: Vec<u32>,
    h: Vec<u32>,
    k: Vec<u32>,
}

impl EmbeddedPair {
    /// Close the generator sets, then check both subgroups are normal in L.
    pub fn new(l: FiniteGroupTable, g_gens: &[u32], h_gens: &[u32]) -> Result<Self, Error> {
        for &x in g_gens.iter().chain(h_gens) {
            if x as usize >= l.order() {
                return Err(Error::InvalidArgument(format!(
                    "element index {} out of range for group of order {}",
                    x + 1,
                    l.order()
                )));
            }
        }
        let g = l.closure(g_gens);
        let h = l.closure(h_gens);
        if !l.is_normal(&g) {
            return Err(Error::NotNormal("G".into()));
        }
        if !l.is_normal(&h) {
            return Err(Error::NotNormal("H".into()));
        }
        let k: Vec<u32> = g.iter().copied().filter(|x| h.binary_search(x).is_ok()).collect();
        Ok(EmbeddedPair { l, g, h, k })
    }

    /// The whole group paired with itself: the `nu_q` situation.
    pub fn diagonal(l: FiniteGroupTable) -> Self {
        let all: Vec<u32> = (0..l.order() as u32).collect();
        EmbeddedPair { g: all.clone(), h: all.clone(), k: all, l }
    }

    pub fn overgroup(&self) -> &FiniteGroupTable {
        &self.l
    }

    pub fn g_elements(&self) -> &[u32] {
        &self.g
    }

    pub fn h_elements(&self) -> &[u32] {
        &self.h
    }

    pub fn k_elements(&self) -> &[u32] {
        &self.k
    }

    /// `GH` as a sorted element set.
    pub fn gh_product(&self) -> Vec<u32> {
        self.l.set_product(&self.g, &self.h)
    }

    /// `[G, H]` as a subgroup of L.
    pub fn commutator_subgroup(&self) -> Vec<u32> {
        let mut gens = Vec::new();
        for &a in &self.g {
            for &b in &self.h {
                gens.push(self.l.comm(a, b));
            }
        }
        gens.sort_unstable();
        gens.dedup();
        self.l.closure(&gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_tables_are_groups() {
        for spec in [
            "cyclic:1",
            "cyclic:7",
            "dihedral:4",
            "dihedral:5",
            "dihedral2:16",
            "quaternion:8",
            "quaternion:16",
            "modular:16",
            "abelian:[2,2]",
            "abelian:[2,4]",
        ] {
            let t = FiniteGroupTable::from_spec(spec).unwrap();
            // new() has already validated the laws exhaustively; sanity:
            assert!(t.order() >= 1, "{spec}");
        }
        assert!(FiniteGroupTable::from_spec("dihedral2:12").is_err());
        assert!(FiniteGroupTable::from_spec("sporadic:1").is_err());
    }

    #[test]
    fn dihedral_structure() {
        let d4 = FiniteGroupTable::dihedral(4);
        assert_eq!(d4.order(), 8);
        assert_eq!(d4.exponent(), 4);
        assert_eq!(d4.nilpotency_class(), Some(2));
        let d5 = FiniteGroupTable::dihedral(5);
        assert_eq!(d5.nilpotency_class(), None);
        assert_eq!(d5.derived_length(), 2);
        let d8 = FiniteGroupTable::dihedral(8);
        assert_eq!(d8.nilpotency_class(), Some(3));
    }

    #[test]
    fn quaternion_structure() {
        let q8 = FiniteGroupTable::quaternion(8).unwrap();
        assert_eq!(q8.order(), 8);
        assert_eq!(q8.exponent(), 4);
        assert_eq!(q8.nilpotency_class(), Some(2));
        // Unique involution.
        let invs: Vec<u32> =
            (0..8).filter(|&a| a != q8.identity() && q8.element_order(a) == 2).collect();
        assert_eq!(invs.len(), 1);
        let q16 = FiniteGroupTable::quaternion(16).unwrap();
        assert_eq!(q16.nilpotency_class(), Some(3));
        assert_eq!(q16.exponent(), 8);
    }

    #[test]
    fn modular16_structure() {
        let m = FiniteGroupTable::modular16();
        assert_eq!(m.order(), 16);
        assert_eq!(m.nilpotency_class(), Some(2));
        assert_eq!(m.exponent(), 8);
    }

    #[test]
    fn table_text_roundtrip() {
        let t = FiniteGroupTable::dihedral(3);
        let text = t.to_text();
        let u = FiniteGroupTable::parse(&text).unwrap();
        assert_eq!(t, u);
    }

    #[test]
    fn rejects_non_groups() {
        // 2x2 table with no identity.
        assert!(FiniteGroupTable::new(2, vec![1, 0, 0, 0]).is_err());
        // Non-associative quasigroup of order 3 (subtraction mod 3).
        let mut mul = vec![0u32; 9];
        for a in 0..3u32 {
            for b in 0..3u32 {
                mul[(a * 3 + b) as usize] = (a + 2 * b) % 3;
            }
        }
        assert!(FiniteGroupTable::new(3, mul).is_err());
    }

    #[test]
    fn quotient_d4_by_center() {
        let d4 = FiniteGroupTable::dihedral(4);
        let center = vec![d4.identity(), 2]; // {1, r^2}
        assert!(d4.is_normal(&center));
        let (q, _) = d4.quotient(&center).unwrap();
        assert_eq!(q.order(), 4);
        assert_eq!(q.exponent(), 2); // V_4
    }

    #[test]
    fn q_perfect_examples() {
        // D_5 is q-perfect for odd q.
        assert!(is_q_perfect(&FiniteGroupTable::dihedral(5), 3));
        // C_2 is not 2-perfect.
        assert!(!is_q_perfect(&FiniteGroupTable::cyclic(2), 2));
        // D_4 is not 4-perfect.
        assert!(!is_q_perfect(&FiniteGroupTable::dihedral(4), 4));
        // q = 1 makes every group 1-perfect.
        assert!(is_q_perfect(&FiniteGroupTable::quaternion(8).unwrap(), 1));
        // q = 0 asks for perfection.
        assert!(!is_q_perfect(&FiniteGroupTable::dihedral(5), 0));
    }

    /// Brute-force oracle: G'G^q as an explicit subgroup.
    fn q_perfect_brute(t: &FiniteGroupTable, q: u32) -> bool {
        let all: Vec<u32> = (0..t.order() as u32).collect();
        let derived = t.derived_of(&all);
        let powers = t.power_subgroup(&all, q);
        let sub = t.closure(&[derived, powers].concat());
        sub.len() == t.order()
    }

    #[test]
    fn q_perfect_matches_brute_force() {
        for spec in ["cyclic:4", "cyclic:6", "dihedral:4", "dihedral:5", "quaternion:8", "modular:16"] {
            let t = FiniteGroupTable::from_spec(spec).unwrap();
            for q in 0..=6 {
                assert_eq!(
                    is_q_perfect(&t, q),
                    q_perfect_brute(&t, q),
                    "{spec} q={q}"
                );
            }
        }
    }

    #[test]
    fn embedded_pair_c4_v4_in_d4() {
        let d4 = FiniteGroupTable::dihedral(4);
        // G = <r> (element index 1), H = <r^2, s> (indices 2 and 4).
        let pair = EmbeddedPair::new(d4, &[1], &[2, 4]).unwrap();
        assert_eq!(pair.g_elements().len(), 4);
        assert_eq!(pair.h_elements().len(), 4);
        assert_eq!(pair.k_elements().len(), 2); // K = <r^2>
        assert_eq!(pair.gh_product().len(), 8);
        assert_eq!(pair.commutator_subgroup().len(), 2); // [G,H] = <r^2>
    }

    #[test]
    fn embedded_pair_rejects_non_normal() {
        let d4 = FiniteGroupTable::dihedral(4);
        // <s> is not normal in D_4.
        assert!(EmbeddedPair::new(d4, &[4], &[1]).is_err());
    }
}
