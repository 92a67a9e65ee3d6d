//! Seeded generator of random valid benches, used for round-trip and
//! propagation property checks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::optics::{ArgKind, BenchGraph, ElementRegistry, NodeDecl, PortRef};
use crate::params::ReservedParam;

const KINDS: [&str; 9] = ["hwp", "pbs", "bs", "eom", "aom", "delay", "phase", "polarizer", "mirror"];

/// A random valid bench with one or two lasers and up to `max_nodes` further
/// elements. Every unconsumed output may carry a detector; at least one does.
pub fn random_bench<R: Rng>(rng: &mut R, name: &str, max_nodes: usize) -> BenchGraph {
    let registry = ElementRegistry::standard();
    let mut g = BenchGraph::new(name);

    let user_params: Vec<String> = (0..rng.gen_range(0..3)).map(|i| format!("angle{i}")).collect();
    for p in &user_params {
        g.set_param(p, rng.gen_range(-180.0..180.0));
    }
    for r in &ReservedParam::ALL {
        if !rng.gen_bool(0.3) {
            continue;
        }
        let value = match r.name {
            "delta_f" => rng.gen_range(1e6..1e8),
            "t_e" => rng.gen_range(1e-7..1e-5),
            "e0" => rng.gen_range(0.1..3.0),
            "f0" => rng.gen_range(1e14..1e15),
            "tau" => rng.gen_range(0.0..1e-8),
            _ => rng.gen_range(-180.0..180.0),
        };
        g.set_param(r.name, value);
    }
    let angle_params: Vec<String> =
        user_params.iter().cloned().chain(["xi", "theta", "psi", "zeta"].map(String::from)).collect();

    let mut open: Vec<PortRef> = Vec::new();
    let mut counter = 0;
    for _ in 0..rng.gen_range(1..=2) {
        add_laser(&mut g, &mut open, rng, &mut counter);
    }

    for _ in 0..rng.gen_range(1..=max_nodes.max(1)) {
        let kind = *KINDS.choose(rng).unwrap();
        let spec = *registry.spec(kind).unwrap();
        let name = format!("{}{counter}", kind.to_uppercase());
        counter += 1;
        let mut decl = NodeDecl::new(kind);
        for arg in spec.args {
            if arg.group.is_some() && decl.args.keys().any(|k| spec.arg(k).is_some_and(|a| a.group == arg.group)) {
                continue;
            }
            if arg.group.is_some() && rng.gen_bool(0.5) && arg.kind != ArgKind::AngleParam {
                continue;
            }
            decl = match arg.kind {
                ArgKind::Count => decl.num(arg.name, rng.gen_range(0..3) as f64),
                ArgKind::Sign => decl.num(arg.name, if rng.gen_bool(0.5) { 1.0 } else { -1.0 }),
                ArgKind::AngleParam => decl.param(arg.name, angle_params.choose(rng).unwrap()),
                _ if rng.gen_bool(0.3) => decl.param(arg.name, angle_params.choose(rng).unwrap()),
                _ => decl.num(arg.name, rng.gen_range(-360.0..360.0)),
            };
        }
        g.add_node(&name, decl);
        for input in spec.inputs {
            if !input.required && (open.is_empty() || rng.gen_bool(0.5)) {
                continue;
            }
            if open.is_empty() {
                add_laser(&mut g, &mut open, rng, &mut counter);
            }
            let from = open.swap_remove(rng.gen_range(0..open.len()));
            g.links.push(crate::optics::Link { from, to: PortRef::new(name.clone(), input.name) });
        }
        open.extend(spec.outputs.iter().map(|o| PortRef::new(name.clone(), *o)));
    }

    open.shuffle(rng);
    let n_det = rng.gen_range(1..=open.len());
    for (i, port) in open.into_iter().take(n_det).enumerate() {
        g.detectors.insert(format!("d{i}"), port);
    }
    g
}

fn add_laser<R: Rng>(g: &mut BenchGraph, open: &mut Vec<PortRef>, rng: &mut R, counter: &mut usize) {
    let name = format!("L{counter}");
    *counter += 1;
    let decl = if rng.gen_bool(0.5) {
        NodeDecl::new("laser").param("amplitude", "e0")
    } else {
        NodeDecl::new("laser").num("amplitude", rng.gen_range(0.1..2.0))
    };
    g.add_node(&name, decl);
    open.push(PortRef::new(name, "out"));
}
