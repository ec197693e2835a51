//! `L_K(E) ≅ ⊕_z M_{n_z}(K)` for finite acyclic `E`, one block per sink `z`
//! indexed by the `n_z` paths ending at `z`. The monomial `pq*` acts on block
//! `z` as `Σ_u E_{pu, qu}` over paths `u` from `r(p)` to `z`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::{OracleError, Representation};
use crate::algebra::{AlgebraContext, Element, Monomial};
use crate::graph::{Path, VertexId};
use crate::scalar::Scalar;

#[derive(Debug, Clone)]
pub struct Block {
    pub sink: VertexId,
    pub paths: Vec<Path>,
    index: BTreeMap<Path, usize>,
}

/// Block-diagonal matrix; entries absent from a block's map are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockMatrix {
    pub blocks: Vec<BTreeMap<(usize, usize), Scalar>>,
}

impl BlockMatrix {
    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(BTreeMap::is_empty)
    }

    fn add_entry(block: &mut BTreeMap<(usize, usize), Scalar>, at: (usize, usize), c: Scalar) {
        let slot = block.entry(at).or_insert_with(Scalar::zero);
        *slot += &c;
        if slot.is_zero() {
            block.remove(&at);
        }
    }
}

#[derive(Debug, Clone)]
pub struct MatrixRep {
    ctx: AlgebraContext,
    blocks: Vec<Block>,
}

impl MatrixRep {
    pub fn new(ctx: &AlgebraContext) -> Result<MatrixRep, OracleError> {
        let g = ctx.graph();
        if !g.is_acyclic() {
            return Err(OracleError::Cyclic);
        }
        if !ctx.is_leavitt() {
            return Err(OracleError::NotLeavitt);
        }
        let blocks = g
            .sinks()
            .into_iter()
            .map(|z| {
                let paths = g.paths_into(z, g.vertex_count());
                let index = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
                Block { sink: z, paths, index }
            })
            .collect();
        Ok(MatrixRep { ctx: ctx.clone(), blocks })
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// `Σ_z n_z²`.
    pub fn dimension(&self) -> usize {
        self.blocks.iter().map(|b| b.paths.len() * b.paths.len()).sum()
    }

    pub fn zero(&self) -> BlockMatrix {
        BlockMatrix { blocks: alloc::vec![BTreeMap::new(); self.blocks.len()] }
    }

    pub fn eval_monomial(&self, m: &Monomial) -> BlockMatrix {
        let mut out = self.zero();
        for (b, block) in self.blocks.iter().enumerate() {
            for (j, t) in block.paths.iter().enumerate() {
                if let Some(u) = t.strip_prefix(m.q()) {
                    let pu = m.p().concat(&u).expect("r(p) = s(u)");
                    let i = block.index[&pu];
                    out.blocks[b].insert((i, j), Scalar::one());
                }
            }
        }
        out
    }

    pub fn scale(&self, a: &BlockMatrix, c: &Scalar) -> BlockMatrix {
        if c.is_zero() {
            return self.zero();
        }
        BlockMatrix { blocks: a.blocks.iter().map(|b| b.iter().map(|(&at, x)| (at, x * c)).collect()).collect() }
    }

    /// `Σ c E_{ij} ↦ Σ c p_i p_j*`, the inverse of evaluation.
    pub fn pullback(&self, a: &BlockMatrix) -> Element {
        let mut out = Element::zero();
        for (block, entries) in self.blocks.iter().zip(&a.blocks) {
            for (&(i, j), c) in entries {
                let m = Monomial::new(block.paths[i].clone(), block.paths[j].clone()).expect("same sink");
                out.add_term(m, c);
            }
        }
        self.ctx.normalize(&out)
    }

    /// The corner projection of a sum of vertices, as row/column indices per block.
    pub fn support(&self, u: &BlockMatrix) -> Vec<Vec<usize>> {
        u.blocks.iter().map(|b| b.keys().filter(|(i, j)| i == j).map(|&(i, _)| i).collect()).collect()
    }

    /// Builds a block matrix from dense corner blocks over index sets `support`.
    pub fn from_corners(&self, support: &[Vec<usize>], corners: &[Vec<Vec<Scalar>>]) -> BlockMatrix {
        let mut out = self.zero();
        for (k, (idx, dense)) in support.iter().zip(corners).enumerate() {
            for (a, &i) in idx.iter().enumerate() {
                for (b, &j) in idx.iter().enumerate() {
                    if !dense[a][b].is_zero() {
                        out.blocks[k].insert((i, j), dense[a][b].clone());
                    }
                }
            }
        }
        out
    }

    /// `Σ_z δ(z) · tr(block z)`.
    pub fn weighted_trace(&self, a: &BlockMatrix, weight: impl Fn(VertexId) -> Scalar) -> Scalar {
        self.blocks
            .iter()
            .zip(&a.blocks)
            .map(|(block, entries)| {
                let tr = entries.iter().filter(|((i, j), _)| i == j).fold(Scalar::zero(), |acc, (_, c)| acc + c);
                tr * weight(block.sink)
            })
            .fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl Representation for MatrixRep {
    type Image = BlockMatrix;

    fn context(&self) -> &AlgebraContext {
        &self.ctx
    }

    fn eval(&self, x: &Element) -> BlockMatrix {
        x.terms().fold(self.zero(), |acc, (m, c)| self.add(&acc, &self.scale(&self.eval_monomial(m), c)))
    }

    fn mul(&self, a: &BlockMatrix, b: &BlockMatrix) -> BlockMatrix {
        let mut out = self.zero();
        for (k, (x, y)) in a.blocks.iter().zip(&b.blocks).enumerate() {
            let mut rows: BTreeMap<usize, Vec<(usize, &Scalar)>> = BTreeMap::new();
            for (&(i, j), c) in y {
                rows.entry(i).or_default().push((j, c));
            }
            for (&(i, j), c) in x {
                for &(l, d) in rows.get(&j).into_iter().flatten() {
                    BlockMatrix::add_entry(&mut out.blocks[k], (i, l), c * d);
                }
            }
        }
        out
    }

    fn add(&self, a: &BlockMatrix, b: &BlockMatrix) -> BlockMatrix {
        let mut out = a.clone();
        for (k, block) in b.blocks.iter().enumerate() {
            for (&at, c) in block {
                BlockMatrix::add_entry(&mut out.blocks[k], at, c.clone());
            }
        }
        out
    }

    fn star(&self, a: &BlockMatrix) -> BlockMatrix {
        let field = self.ctx.field();
        BlockMatrix {
            blocks: a.blocks.iter().map(|b| b.iter().map(|(&(i, j), c)| ((j, i), field.star(c))).collect()).collect(),
        }
    }
}
