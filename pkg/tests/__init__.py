# Test package for the q-Heisenberg toolkit
