use crate::error::{Error, Result};
use crate::exactlin::{EchelonBuilder, Mat, Scalar, SubspaceBasis};
use crate::module::rep::{ModuleMap, Rep, SubRep};

/// The submodule generated by `vectors` (flat vectors of `r`).
pub fn spin<I>(r: &Rep, vectors: I) -> SubRep
where
    I: IntoIterator<Item = Vec<Scalar>>,
{
    spin_from(r, &SubRep::zero(r), vectors)
}

/// The submodule generated by `start` together with `vectors`.
pub fn spin_from<I>(r: &Rep, start: &SubRep, vectors: I) -> SubRep
where
    I: IntoIterator<Item = Vec<Scalar>>,
{
    let arrows = r.algebra().quiver().arrows();
    let mut builders: Vec<EchelonBuilder> = start
        .parts()
        .iter()
        .map(EchelonBuilder::from_subspace)
        .collect();
    let mut queue: Vec<(usize, Vec<Scalar>)> = Vec::new();
    for x in vectors {
        // Vertex idempotents act as the projections onto the components.
        for v in 0..r.vertex_count() {
            let part = r.component(&x, v).to_vec();
            if builders[v].insert(part.clone()) {
                queue.push((v, part));
            }
        }
    }
    while let Some((v, x)) = queue.pop() {
        for (ai, a) in arrows.iter().enumerate() {
            if a.source != v {
                continue;
            }
            let img = r.action(ai).mul_vec(&x);
            if builders[a.target].insert(img.clone()) {
                queue.push((a.target, img));
            }
        }
    }
    SubRep::from_parts(builders.into_iter().map(EchelonBuilder::finish).collect())
}

/// `J M`: the sum of the images of all arrows.
pub fn radical_of(r: &Rep) -> SubRep {
    let f = r.field();
    let arrows = r.algebra().quiver().arrows();
    let parts = (0..r.vertex_count())
        .map(|w| {
            let cols = arrows
                .iter()
                .enumerate()
                .filter(|(_, a)| a.target == w)
                .flat_map(|(ai, _)| {
                    let m = r.action(ai);
                    (0..m.cols()).map(move |c| m.col(c))
                });
            SubspaceBasis::span(f, r.dims()[w], cols)
        })
        .collect();
    SubRep::from_parts(parts)
}

/// `{x : J x = 0}`: the joint kernel of all arrows.
pub fn socle_of(r: &Rep) -> SubRep {
    let f = r.field();
    let arrows = r.algebra().quiver().arrows();
    let parts = (0..r.vertex_count())
        .map(|v| {
            let rows: Vec<Vec<Scalar>> = arrows
                .iter()
                .enumerate()
                .filter(|(_, a)| a.source == v)
                .flat_map(|(ai, _)| r.action(ai).row_vecs())
                .collect();
            if rows.is_empty() {
                SubspaceBasis::full(f, r.dims()[v])
            } else {
                Mat::from_rows(f, r.dims()[v], rows)
                    .expect("rows sized to the vertex")
                    .kernel()
            }
        })
        .collect();
    SubRep::from_parts(parts)
}

/// `M / J M` with its projection.
pub fn top_of(r: &Rep) -> (Rep, ModuleMap) {
    quotient(r, &radical_of(r)).expect("the radical is a submodule")
}

/// The quotient `r / s` with basis the unit vectors on the non-pivot
/// coordinates of each part of `s`, and the canonical projection.
pub fn quotient(r: &Rep, s: &SubRep) -> Result<(Rep, ModuleMap)> {
    if !s.is_closed(r) {
        return Err(Error::NotClosed(
            "quotient by a subspace that is not a submodule".into(),
        ));
    }
    let f = r.field();
    let proj_blocks: Vec<Mat> = (0..r.vertex_count())
        .map(|v| {
            let part = s.part(v);
            let d = r.dims()[v];
            let cols: Vec<Vec<Scalar>> = (0..d)
                .map(|j| {
                    let mut e = vec![f.zero(); d];
                    e[j] = f.one();
                    part.quotient_coords(&e)
                })
                .collect();
            Mat::from_fn(f, d - part.dim(), d, |row, c| cols[c][row].clone())
        })
        .collect();
    let actions = r
        .algebra()
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            // Lift along the free columns, act, project.
            let free = s.part(a.source).free_columns();
            let lift = Mat::from_fn(f, r.dims()[a.source], free.len(), |row, c| {
                if row == free[c] {
                    f.one()
                } else {
                    f.zero()
                }
            });
            proj_blocks[a.target].mul(r.action(ai)).mul(&lift)
        })
        .collect();
    let dims = proj_blocks.iter().map(Mat::rows).collect();
    let q = Rep::new_unchecked(r.algebra().clone(), dims, actions)?;
    Ok((q, ModuleMap::from_blocks(proj_blocks)))
}

/// `{x : map(x) ∈ s}` for a submodule `s` of the target.
pub fn preimage(map: &ModuleMap, s: &SubRep) -> SubRep {
    SubRep::from_parts(
        map.blocks()
            .iter()
            .zip(s.parts())
            .map(|(b, p)| p.preimage(b))
            .collect(),
    )
}

/// Image of a submodule `s` of the source.
pub fn image_of(map: &ModuleMap, s: &SubRep) -> SubRep {
    SubRep::from_parts(
        map.blocks()
            .iter()
            .zip(s.parts())
            .map(|(b, p)| p.map(b))
            .collect(),
    )
}

/// Is the module semisimple, i.e. is its radical zero?
pub fn is_semisimple(r: &Rep) -> bool {
    radical_of(r).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::FieldSpec;
    use crate::fixtures;

    fn kronecker_v(p: u64) -> Rep {
        // Dims (2, 1): the injective envelope of the simple at b.
        let k = fixtures::kronecker(FieldSpec::Prime(p));
        let f = k.field();
        Rep::new(
            k,
            vec![2, 1],
            vec![Mat::from_i64(f, &[&[1, 0]]), Mat::from_i64(f, &[&[0, 1]])],
        )
        .unwrap()
    }

    #[test]
    fn radical_and_socle_of_v() {
        let v = kronecker_v(2);
        let rad = radical_of(&v);
        let soc = socle_of(&v);
        assert_eq!(rad.dims(), vec![0, 1]);
        assert_eq!(rad, soc);
        let (top, proj) = top_of(&v);
        assert_eq!(top.dims(), &[2, 0]);
        assert!(proj.is_homomorphism(&v, &top));
    }

    #[test]
    fn spin_of_nothing_and_of_a_generator() {
        let v = kronecker_v(3);
        assert!(spin(&v, Vec::<Vec<Scalar>>::new()).is_zero());
        let x = v.unit(0, 0);
        let s = spin(&v, [x]);
        assert_eq!(s.dims(), vec![1, 1]);
        assert!(s.is_closed(&v));
    }

    #[test]
    fn quotient_extremes() {
        let v = kronecker_v(2);
        let (q, p) = quotient(&v, &SubRep::zero(&v)).unwrap();
        assert_eq!(q, v);
        assert_eq!(p, ModuleMap::identity(&v));
        let (q, _) = quotient(&v, &SubRep::whole(&v)).unwrap();
        assert!(q.is_zero());
    }

    #[test]
    fn quotient_rejects_non_submodules() {
        let v = kronecker_v(2);
        let f = v.field();
        let s = SubRep::from_parts(vec![SubspaceBasis::full(f, 2), SubspaceBasis::zero(f, 1)]);
        assert!(quotient(&v, &s).is_err());
    }

    #[test]
    fn preimage_of_zero_is_kernel() {
        let v = kronecker_v(2);
        let (q, p) = quotient(&v, &radical_of(&v)).unwrap();
        assert_eq!(preimage(&p, &SubRep::zero(&q)), radical_of(&v));
    }
}
