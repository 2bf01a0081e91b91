"""Application layer coordinating the execution of use cases."""