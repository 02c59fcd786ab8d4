use zpindex::complex::EquivariantComplex;
use zpindex::explore::{random_free_complex, GenConfig};
use zpindex::homology::HomologyTable;
use zpindex::index::{classifying_lift, index_report};
use zpindex::linalg::PrimeField;

fn main() {
    let cfg = GenConfig {
        field: PrimeField::new(3).unwrap(),
        max_dim: 3,
        max_rank: 2,
        seed: 11,
        trials: 10,
    };
    for t in 0..20u64 {
        let c = random_free_complex(&cfg, t);
        let r = index_report(&c);
        match r {
            Ok(rep) => println!("trial {}: ranks {:?} index {} flags {:?}", t, c.ranks(), rep.index, rep.hit_flags),
            Err(e) => {
                println!("trial {} FAILED: ranks {:?}: {}", t, c.ranks(), e);
                dump(&c);
            }
        }
    }
}

fn dump(c: &EquivariantComplex) {
    println!("name: {}", c.name());
    for n in 1..=c.dim() {
        println!("d{} = {:?}", n, c.boundary(n));
    }
    let lift = classifying_lift(c).unwrap();
    for n in 0..=c.dim() {
        let vals: Vec<String> = lift.map(n).iter().map(|e| format!("({})", e)).collect();
        println!("phi_{} = {}", n, vals.join(", "));
    }
    let table = HomologyTable::compute(c).unwrap();
    println!("orbit dims {:?}", table.orbit_dims());
    println!("orbit boundaries:");
    let oc = c.orbit_complex();
    for n in 1..=c.dim() {
        println!("eps d{} = {:?}", n, oc.boundary(n));
    }
}
