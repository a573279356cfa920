pub mod algebra;
pub mod groupoid;
pub mod leavitt;
pub mod linalg;
pub mod report;
pub mod rings;
pub mod semigroup;
pub mod text;
pub mod verdict;
pub mod verify;
