package learnlib.metrics;

public class AccuracyMetric {
    private int correct;
    private int total;

    public void record(boolean hit) {
        total++;
        if (hit) {
            correct++;
        }
    }

    public double value() {
        return total == 0 ? 0.0 : (double) correct / total;
    }
}
