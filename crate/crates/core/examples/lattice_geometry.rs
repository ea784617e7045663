//! Prints the bonds of both lattices and the graph distances from site 1.

use spinxy::lattice::{build_edges, LatticeKind, STAR_CENTER};

fn main() -> spinxy::Result<()> {
    for kind in [LatticeKind::Chain7, LatticeKind::Star7] {
        let lattice = build_edges(kind, 0.5)?;
        println!("{kind}: {} bonds", lattice.edges.len());
        for e in &lattice.edges {
            println!("  {}-{}  J = {:.2}", e.i, e.j, e.coupling);
        }
        if let Some(w) = &lattice.warning {
            println!("  note: {w}");
        }
        for to in [2, 4, 7] {
            println!("  d(1,{to}) = {:?}", lattice.distance(1, to, None));
        }
        if kind == LatticeKind::Star7 {
            println!("  d(1,7) around the ring = {:?}", lattice.distance(1, 7, Some(STAR_CENTER)));
        }
    }
    Ok(())
}
