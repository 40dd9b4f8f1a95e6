package learnlib.model;

public class NeuralModel {
    private final int layers;
    private double[] weights;

    public NeuralModel(int layers) {
        this.layers = layers;
        this.weights = new double[layers * 16];
    }

    public double predict(double[] features) {
        double activation = 0.0;
        for (int i = 0; i < features.length && i < weights.length; i++) {
            activation += features[i] * weights[i];
        }
        return activation;
    }

    public void updateWeights(double[] gradient) {
        for (int i = 0; i < gradient.length && i < weights.length; i++) {
            weights[i] -= gradient[i];
        }
    }
}
