public int getJobID(String jobName) {
    return -1;
}
