//! DOT emission: Hasse diagrams (cover edges, drawn bottom-to-top) and the
//! totally-below relation as a digraph. Node and edge order is by element
//! index, so output is deterministic.

use latmon_core::below::totally_below;
use latmon_core::lattice::Carrier;

pub enum DotRelation {
    Order,
    TotallyBelow,
}

pub fn emit_dot(name: &str, carrier: &Carrier, relation: DotRelation) -> Result<String, String> {
    let poset = carrier.poset();
    let mut out = String::new();
    out.push_str(&format!("digraph \"{name}\" {{\n"));
    out.push_str("  rankdir=BT;\n");
    for i in 0..poset.size() {
        out.push_str(&format!("  n{} [label=\"{}\"];\n", i, poset.label(i)));
    }
    match relation {
        DotRelation::Order => {
            for (a, b) in poset.covers() {
                out.push_str(&format!("  n{a} -> n{b};\n"));
            }
        }
        DotRelation::TotallyBelow => {
            let lat = carrier
                .lattice()
                .ok_or_else(|| "totally-below needs a lattice carrier".to_string())?;
            let rel = totally_below(lat, 1_000_000).map_err(|e| e.to_string())?;
            for x in 0..poset.size() {
                for y in rel.below[x].iter() {
                    out.push_str(&format!("  n{y} -> n{x};\n"));
                }
            }
        }
    }
    out.push_str("}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use latmon_core::corpus;

    #[test]
    fn singleton_has_one_node_no_edges() {
        let c = corpus::chain(1);
        let dot = emit_dot("one", &c, DotRelation::Order).unwrap();
        assert!(dot.contains("n0"));
        assert!(!dot.contains("->"));
    }

    #[test]
    fn chain_order_has_two_edges() {
        let c = corpus::chain(3);
        let dot = emit_dot("c3", &c, DotRelation::Order).unwrap();
        assert_eq!(dot.matches("->").count(), 2);
    }

    #[test]
    fn chain_totally_below_has_five_edges() {
        let c = corpus::chain(3);
        let dot = emit_dot("c3", &c, DotRelation::TotallyBelow).unwrap();
        assert_eq!(dot.matches("->").count(), 5);
    }
}
