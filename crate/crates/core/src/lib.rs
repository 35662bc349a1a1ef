pub mod gf2;
pub mod cohomology;
pub mod tensor_forms;
pub mod simulator;
