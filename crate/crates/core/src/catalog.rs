//! The group catalog: small finite groups with validated multiplication
//! tables, matching polycyclic presentations, and class/exponent metadata,
//! plus the named normally-embedded pairs the eta constructions run on.

use crate::error::Error;
use crate::pc::{NormalWord, PcPresentation};
use crate::table::{EmbeddedPair, FiniteGroupTable};

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub spec: String,
    pub table: FiniteGroupTable,
    pub pc: PcPresentation,
    /// Nilpotency class; `None` for non-nilpotent entries.
    pub class: Option<u32>,
    pub exponent: u64,
}

/// A finalized pc presentation for a built-in spec.
pub fn pc_from_spec(spec: &str) -> Result<PcPresentation, Error> {
    let bad = || Error::UnknownGroupSpec(spec.to_string());
    let (family, arg) = spec.split_once(':').ok_or_else(bad)?;
    let mut p = match family {
        "cyclic" => {
            let n: u64 = arg.parse().map_err(|_| bad())?;
            if n == 0 {
                return Err(bad());
            }
            if n == 1 {
                PcPresentation::new(0)
            } else {
                let mut p = PcPresentation::new(1);
                p.set_power(0, n, NormalWord::identity())?;
                p
            }
        }
        "dihedral" | "dihedral2" => {
            let mut n: u64 = arg.parse().map_err(|_| bad())?;
            if family == "dihedral2" {
                if n < 8 || !n.is_power_of_two() {
                    return Err(bad());
                }
                n /= 2;
            }
            if n < 2 {
                return Err(bad());
            }
            let mut p = PcPresentation::new(2);
            p.set_power(0, 2, NormalWord::identity())?;
            p.set_power(1, n, NormalWord::identity())?;
            p.set_conj(1, 0, NormalWord(vec![(1, n as i64 - 1)]))?;
            p
        }
        "quaternion" => {
            let order: u64 = arg.parse().map_err(|_| bad())?;
            if order % 4 != 0 || order < 8 {
                return Err(bad());
            }
            let m = order / 4;
            let mut p = PcPresentation::new(2);
            p.set_power(0, 2, NormalWord(vec![(1, m as i64)]))?;
            p.set_power(1, 2 * m, NormalWord::identity())?;
            p.set_conj(1, 0, NormalWord(vec![(1, 2 * m as i64 - 1)]))?;
            p
        }
        "modular" => {
            if arg != "16" {
                return Err(bad());
            }
            let mut p = PcPresentation::new(2);
            p.set_power(0, 2, NormalWord::identity())?;
            p.set_power(1, 8, NormalWord::identity())?;
            p.set_conj(1, 0, NormalWord(vec![(1, 5)]))?;
            p
        }
        "abelian" => {
            let inner = arg.strip_prefix('[').and_then(|s| s.strip_suffix(']')).ok_or_else(bad)?;
            let orders: Vec<u64> = inner
                .split(',')
                .map(|t| t.trim().parse::<u64>())
                .collect::<Result<_, _>>()
                .map_err(|_| bad())?;
            if orders.is_empty() || orders.contains(&0) {
                return Err(bad());
            }
            let nontrivial: Vec<u64> = orders.iter().copied().filter(|&d| d > 1).collect();
            let mut p = PcPresentation::new(nontrivial.len());
            for (i, &d) in nontrivial.iter().enumerate() {
                p.set_power(i, d, NormalWord::identity())?;
            }
            p
        }
        _ => return Err(bad()),
    };
    p.finalize()?;
    Ok(p)
}

/// A combined entry (table, pc presentation, metadata) for a spec. The
/// table and the presentation are built independently and cross-checked by
/// order and element-order multiset.
pub fn entry(spec: &str) -> Result<CatalogEntry, Error> {
    let table = FiniteGroupTable::from_spec(spec)?;
    let pc = pc_from_spec(spec)?;
    let pc_order = pc.order()?;
    if pc_order != table.order() as u64 {
        return Err(Error::InvalidArgument(format!(
            "catalog mismatch for {spec}: table order {} vs pc order {pc_order}",
            table.order()
        )));
    }
    let mut table_orders: Vec<u64> =
        (0..table.order() as u32).map(|a| table.element_order(a)).collect();
    let mut pc_orders: Vec<u64> = pc
        .elements()?
        .iter()
        .map(|w| pc.element_order(w))
        .collect::<Result<_, _>>()?;
    table_orders.sort_unstable();
    pc_orders.sort_unstable();
    if table_orders != pc_orders {
        return Err(Error::InvalidArgument(format!(
            "catalog mismatch for {spec}: element order multisets differ"
        )));
    }
    Ok(CatalogEntry {
        spec: spec.to_string(),
        class: table.nilpotency_class(),
        exponent: table.exponent(),
        table,
        pc,
    })
}

/// Canonical spec list of the catalog.
pub fn catalog_specs() -> Vec<String> {
    let mut specs: Vec<String> = (1..=16).map(|n| format!("cyclic:{n}")).collect();
    specs.extend((3..=10).map(|n| format!("dihedral:{n}")));
    specs.push("quaternion:8".into());
    specs.push("quaternion:16".into());
    specs.push("modular:16".into());
    specs.push("abelian:[2,2]".into());
    specs.push("abelian:[2,2,2]".into());
    specs.push("abelian:[3,3]".into());
    specs.push("abelian:[2,4]".into());
    specs
}

/// Catalog filters accepted on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatalogFilter {
    All,
    ClassLe3,
    Group(String),
}

impl std::str::FromStr for CatalogFilter {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "all" => Ok(CatalogFilter::All),
            "class-le-3" => Ok(CatalogFilter::ClassLe3),
            other => Ok(CatalogFilter::Group(other.to_string())),
        }
    }
}

impl CatalogFilter {
    pub fn admits(&self, e: &CatalogEntry) -> bool {
        match self {
            CatalogFilter::All => true,
            CatalogFilter::ClassLe3 => e.class.is_some_and(|c| c <= 3),
            CatalogFilter::Group(spec) => &e.spec == spec,
        }
    }
}

/// The full catalog; entries are validated on construction.
pub fn catalog() -> Vec<CatalogEntry> {
    catalog_specs()
        .iter()
        .map(|s| entry(s).expect("catalog entries are valid"))
        .collect()
}

/// A named normally-embedded pair for the eta constructions.
#[derive(Clone, Debug)]
pub struct NamedPair {
    pub name: String,
    pub pair: EmbeddedPair,
}

/// The pairs the claim harness exercises. Element indices follow the
/// canonical numbering of the built-in tables.
pub fn eta_pairs() -> Vec<NamedPair> {
    let mut out = Vec::new();
    let d4 = FiniteGroupTable::dihedral(4);
    // G = <r> = C_4, H = <r^2, s> = V_4 inside D_4; K = <r^2>.
    out.push(NamedPair {
        name: "C4,V4<D4".into(),
        pair: EmbeddedPair::new(d4.clone(), &[1], &[2, 4]).expect("valid pair"),
    });
    out.push(NamedPair {
        name: "C4,C4<D4".into(),
        pair: EmbeddedPair::new(d4.clone(), &[1], &[1]).expect("valid pair"),
    });
    // Two V_4 copies inside D_4: <r^2, s> and <r^2, r s>.
    out.push(NamedPair {
        name: "V4,V4'<D4".into(),
        pair: EmbeddedPair::new(d4, &[2, 4], &[2, 5]).expect("valid pair"),
    });
    // <a> and <b> inside Q_8; K = <a^2> = Z(Q_8).
    let q8 = FiniteGroupTable::quaternion(8).expect("q8");
    out.push(NamedPair {
        name: "C4a,C4b<Q8".into(),
        pair: EmbeddedPair::new(q8, &[1], &[4]).expect("valid pair"),
    });
    // C_6 and S_3 inside D_6; K = <r^2> = C_3.
    let d6 = FiniteGroupTable::dihedral(6);
    out.push(NamedPair {
        name: "C6,S3<D6".into(),
        pair: EmbeddedPair::new(d6, &[1], &[2, 6]).expect("valid pair"),
    });
    // Coprime pair with trivial intersection inside C_6.
    let c6 = FiniteGroupTable::cyclic(6);
    out.push(NamedPair {
        name: "C2,C3<C6".into(),
        pair: EmbeddedPair::new(c6, &[3], &[2]).expect("valid pair"),
    });
    out
}

pub fn eta_pair(name: &str) -> Result<NamedPair, Error> {
    eta_pairs()
        .into_iter()
        .find(|p| p.name == name)
        .ok_or_else(|| Error::UnknownGroupSpec(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_validates() {
        let cat = catalog();
        assert_eq!(cat.len(), 16 + 8 + 3 + 4);
        for e in &cat {
            assert_eq!(e.exponent, e.table.exponent(), "{}", e.spec);
        }
    }

    #[test]
    fn class_metadata() {
        let by_spec = |s: &str| entry(s).unwrap();
        assert_eq!(by_spec("cyclic:1").class, Some(0));
        assert_eq!(by_spec("cyclic:12").class, Some(1));
        assert_eq!(by_spec("dihedral:4").class, Some(2));
        assert_eq!(by_spec("dihedral:8").class, Some(3));
        assert_eq!(by_spec("quaternion:16").class, Some(3));
        assert_eq!(by_spec("modular:16").class, Some(2));
        assert_eq!(by_spec("dihedral:6").class, None);
        let le3: Vec<String> = catalog()
            .into_iter()
            .filter(|e| CatalogFilter::ClassLe3.admits(e))
            .map(|e| e.spec)
            .collect();
        assert!(le3.contains(&"dihedral:8".to_string()));
        assert!(le3.contains(&"quaternion:16".to_string()));
        assert!(!le3.contains(&"dihedral:5".to_string()));
    }

    #[test]
    fn pairs_validate() {
        let pairs = eta_pairs();
        assert_eq!(pairs.len(), 6);
        let p = eta_pair("C4,V4<D4").unwrap();
        assert_eq!(p.pair.k_elements().len(), 2);
        let p = eta_pair("C2,C3<C6").unwrap();
        assert_eq!(p.pair.k_elements().len(), 1);
        assert!(eta_pair("nope").is_err());
    }

    #[test]
    fn cyclic_one_has_empty_presentation() {
        let e = entry("cyclic:1").unwrap();
        assert_eq!(e.pc.ngens(), 0);
        assert_eq!(e.pc.order().unwrap(), 1);
        assert_eq!(e.table.order(), 1);
    }
}
