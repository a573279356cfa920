use std::fmt;
use std::sync::Arc;

use super::{GroupAlgebraElement, IsotropyDescriptor, RingDescriptor, RingElement, RingError};

/// Block structure of `∏ M_{n_i}(R G_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockShape {
    pub ring: RingDescriptor,
    pub blocks: Vec<(usize, Arc<IsotropyDescriptor>)>,
}

impl BlockShape {
    pub fn new(ring: RingDescriptor, blocks: Vec<(usize, Arc<IsotropyDescriptor>)>) -> Self {
        BlockShape { ring, blocks }
    }

    /// Entry ring of one block, e.g. `Q`, `Laurent(Z)` or `Q[C_2]`.
    pub fn entry_ring(ring: &RingDescriptor, group: &IsotropyDescriptor) -> String {
        match group {
            IsotropyDescriptor::Integers => format!("Laurent({ring})"),
            g if g.is_trivial() => ring.to_string(),
            g => format!("{ring}[{}]", g.class_name()),
        }
    }
}

impl fmt::Display for BlockShape {
    /// `M_2(Q) x M_1(Laurent(Z))`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (n, g)) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, " x ")?;
            }
            write!(f, "M_{n}({})", BlockShape::entry_ring(&self.ring, g))?;
        }
        Ok(())
    }
}

/// One `n×n` matrix over `RG`, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    size: usize,
    group: Arc<IsotropyDescriptor>,
    entries: Vec<GroupAlgebraElement>,
}

impl Block {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn group(&self) -> &Arc<IsotropyDescriptor> {
        &self.group
    }

    pub fn entry(&self, row: usize, col: usize) -> &GroupAlgebraElement {
        &self.entries[row * self.size + col]
    }

    pub fn entry_mut(&mut self, row: usize, col: usize) -> &mut GroupAlgebraElement {
        &mut self.entries[row * self.size + col]
    }
}

/// Element of `∏ M_{n_i}(R G_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockMatrix {
    ring: RingDescriptor,
    blocks: Vec<Block>,
}

impl BlockMatrix {
    pub fn zero(shape: &BlockShape) -> Self {
        let blocks = shape
            .blocks
            .iter()
            .map(|(n, g)| Block {
                size: *n,
                group: g.clone(),
                entries: vec![GroupAlgebraElement::zero(g.clone(), shape.ring.clone()); n * n],
            })
            .collect();
        BlockMatrix { ring: shape.ring.clone(), blocks }
    }

    pub fn identity(shape: &BlockShape) -> Self {
        let mut m = Self::zero(shape);
        for block in &mut m.blocks {
            for i in 0..block.size {
                *block.entry_mut(i, i) = GroupAlgebraElement::one(block.group.clone(), shape.ring.clone());
            }
        }
        m
    }

    /// `c·g·E_{row,col}` in block `block`.
    pub fn unit(shape: &BlockShape, block: usize, row: usize, col: usize, g: i64, c: RingElement) -> Self {
        let mut m = Self::zero(shape);
        let b = &mut m.blocks[block];
        *b.entry_mut(row, col) = GroupAlgebraElement::monomial(b.group.clone(), shape.ring.clone(), g, c);
        m
    }

    pub fn shape(&self) -> BlockShape {
        BlockShape { ring: self.ring.clone(), blocks: self.blocks.iter().map(|b| (b.size, b.group.clone())).collect() }
    }

    pub fn ring(&self) -> &RingDescriptor {
        &self.ring
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block_mut(&mut self, i: usize) -> &mut Block {
        &mut self.blocks[i]
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| b.entries.iter().all(|e| e.is_zero()))
    }

    fn check_shape(&self, other: &Self) -> Result<(), RingError> {
        self.ring.expect_same(&other.ring)?;
        let same = self.blocks.len() == other.blocks.len()
            && self
                .blocks
                .iter()
                .zip(&other.blocks)
                .all(|(a, b)| a.size == b.size && (Arc::ptr_eq(&a.group, &b.group) || a.group == b.group));
        if same {
            Ok(())
        } else {
            Err(RingError::ShapeMismatch { left: self.shape().to_string(), right: other.shape().to_string() })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, RingError> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (a, b) in out.blocks.iter_mut().zip(&other.blocks) {
            for (x, y) in a.entries.iter_mut().zip(&b.entries) {
                *x = x.add(y)?;
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for b in &mut out.blocks {
            for x in &mut b.entries {
                *x = x.neg();
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self, RingError> {
        self.add(&other.neg())
    }

    /// Blockwise matrix product.
    pub fn mul(&self, other: &Self) -> Result<Self, RingError> {
        self.check_shape(other)?;
        let mut out = BlockMatrix::zero(&self.shape());
        for ((a, b), c) in self.blocks.iter().zip(&other.blocks).zip(&mut out.blocks) {
            let n = a.size;
            for i in 0..n {
                for k in 0..n {
                    let aik = a.entry(i, k);
                    if aik.is_zero() {
                        continue;
                    }
                    for j in 0..n {
                        let bkj = b.entry(k, j);
                        if bkj.is_zero() {
                            continue;
                        }
                        let prod = aik.mul(bkj)?;
                        let cij = c.entry_mut(i, j);
                        *cij = cij.add(&prod)?;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Nonzero entries as `(block, row, col, entry)`.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, usize, &GroupAlgebraElement)> {
        self.blocks.iter().enumerate().flat_map(|(bi, b)| {
            b.entries
                .iter()
                .enumerate()
                .filter(|(_, e)| !e.is_zero())
                .map(move |(k, e)| (bi, k / b.size, k % b.size, e))
        })
    }
}

impl fmt::Display for BlockMatrix {
    /// Sparse listing: `[block 0] (1,2): x` per nonzero entry, 1-based.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for (bi, row, col, e) in self.nonzero_entries() {
            if any {
                write!(f, "; ")?;
            }
            any = true;
            write!(f, "[{}]({},{}): {}", bi + 1, row + 1, col + 1, e)?;
        }
        if !any {
            write!(f, "0")?;
        }
        Ok(())
    }
}
