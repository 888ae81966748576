use std::io::Write;

use crate::amalgam::{build_amalgam, BuildOptions, FactorAssignment, SubbaseSel};
use crate::cli::{emit, CmdResult, DemoName, ExitStatus};
use crate::constructions::{
    circle_amalgam, connecting_chain, connectedness_with_witness, connectify, discrete, ind_comparison, pseudo_cone,
    semicircle_subbase,
};
use crate::error::Error;
use crate::pointset::PointSet;
use crate::topology::{generate_topology, ContinuousMap, DEFAULT_IND_BOUND};

pub(crate) fn run(name: DemoName, out: &mut dyn Write) -> CmdResult {
    match name {
        DemoName::Circle => circle(out),
        DemoName::Cone => cone(out),
        DemoName::Connectify => connectify_demo(out),
    }
}

fn check(ok: bool, what: &str) -> Result<(), Error> {
    if ok {
        Ok(())
    } else {
        Err(Error::Verification(what.to_string()))
    }
}

fn circle(out: &mut dyn Write) -> CmdResult {
    let (sel, e) = semicircle_subbase();
    let a = circle_amalgam(&discrete(2))?;
    let base = a.base();
    let arcs: Vec<String> = sel
        .sets()
        .iter()
        .map(|s| format!("{{{}}}", s.iter().map(|p| base.label(p)).collect::<Vec<_>>().join(",")))
        .collect();
    emit(out, format_args!("base: four-point circle, subbase {}", arcs.join(" ")));
    let antipodes_split = sel.sets().iter().all(|s| !e.is_subset(s));
    check(antipodes_split, "a member contains both c and d")?;
    emit(out, "no member contains both c and d: true");
    emit(out, "factors: D2 on every member");
    emit(out, format_args!("points: {}", a.len()));
    let connected = connectedness_with_witness(&a, &e)?;
    check(connected && a.space().is_connected(), "circle amalgam is not connected")?;
    emit(out, "connected: true");
    let dims = ind_comparison(&a, DEFAULT_IND_BOUND)?;
    emit(out, format_args!("ind(amalgam): {}", dims.amalgam));
    emit(out, format_args!("ind(base): {}", dims.base));
    let (y0, y1) = (a.fiber_range(0).start, a.fiber_range(1).end - 1);
    let w = connecting_chain(&a, &e, y0, y1)?;
    emit(out, format_args!("witness chain from [{}] to [{}]:", a.space().label(y0), a.space().label(y1)));
    for (i, z) in w.chain.iter().enumerate() {
        let t = a.index_of(z).expect("chain points lie in the carrier");
        emit(out, format_args!("  z{i} = [{}]", a.space().label(t)));
    }
    Ok(ExitStatus::Ok)
}

fn cone(out: &mut dyn Write) -> CmdResult {
    let a = pseudo_cone(&discrete(2))?;
    emit(out, "base: Sierpinski space, {s1} carries D2, the whole space carries a point");
    emit(out, format_args!("points: {}", a.len()));
    let e = PointSet::singleton(2, 0);
    check(connectedness_with_witness(&a, &e)?, "cone is not connected")?;
    emit(out, "connected: true (witness set {s0})");
    emit(out, format_args!("apex: [{}]", a.space().label(a.fiber_range(0).start)));
    emit(out, format_args!("ind: {}", a.space().ind(DEFAULT_IND_BOUND)?));
    Ok(ExitStatus::Ok)
}

fn connectify_demo(out: &mut dyn Write) -> CmdResult {
    let d2 = discrete(2);
    let sel = SubbaseSel::new(d2.clone(), vec![PointSet::singleton(2, 0), PointSet::singleton(2, 1)])?;
    let y = build_amalgam(&sel, &FactorAssignment::uniform(&d2, 2)?)?;
    emit(out, format_args!("input: {} points, connected: {}", y.len(), y.space().is_connected()));
    let ambient = generate_topology(3, &[PointSet::singleton(3, 0), PointSet::singleton(3, 1)])
        .with_labels(["a", "b", "c"]);
    emit(out, format_args!("ambient: 3 points, {} opens, outside point c", ambient.opens().len()));
    let embed = ContinuousMap::new(d2, ambient.clone(), vec![0, 1])?;
    let c = connectify(&y, &ambient, &embed, 2, BuildOptions::default())?;
    emit(out, format_args!("extension: {} points, {} members", c.result.len(), c.extended_sel.len()));
    emit(out, format_args!("embedding: {}", c.embedding.is_embedding()));
    emit(out, format_args!("dense: {}", c.result.space().is_dense(&c.embedding.image())));
    emit(out, format_args!("proper: {}", !c.embedding.is_surjective()));
    emit(out, format_args!("connected: {}", c.result.space().is_connected()));
    Ok(ExitStatus::Ok)
}
