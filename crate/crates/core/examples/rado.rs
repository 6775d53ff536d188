//! The bit model of the Rado graph and coded basic sets.

use mslab::rado::{
    basis_refinement_check, rado_adjacent, rado_extension_witness, rado_space, BasisCode, RadoPoint,
};

fn main() -> mslab::Result<()> {
    for (i, j) in [(0, 1), (1, 2), (0, 2), (3, 11)] {
        println!("{i} ~ {j}: {}", rado_adjacent(i, j)?);
    }
    let w = rado_extension_witness(&[1, 3], &[0, 2])?;
    println!("adjacent to 1, 3 and not to 0, 2: {w} = {w:b}");

    let vs: Vec<u64> = (0..128).collect();
    rado_space(&vs)?;
    println!("path metric on 0..128 is valid");

    let p: BasisCode = "0:1".parse()?;
    let q: BasisCode = "0:1,1:2".parse()?;
    let sample: Vec<RadoPoint> = (0..256).map(RadoPoint::Vertex).collect();
    let r = basis_refinement_check(&p, &q, &sample)?;
    println!("B_q inside B_p on 0..256: {:?} {:?}", r.verdict, r.counts);
    Ok(())
}
